#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "losslin/loss.hpp"
#include "losslin/partition.hpp"

namespace losslin {

enum class BoundKind { lower, upper };

const char* to_string(BoundKind kind);

/// One affine piece, in the caller's (rescaled) coordinates. Unbounded ends
/// are +-infinity.
struct Segment {
  double slope;
  double intercept;
  double domain_low;
  double domain_high;

  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Piecewise-linear bound of a normal loss function.
///
/// Segments are held in standard-normal coordinates and mapped to the
/// target scale on access: y(x) = sigma * (s * z + c) with z = (x - mu) / sigma.
/// For Target::loss the segments are stored already sheared by -(x - mu), so
/// coefficients read back are directly usable. The outer segments are
/// unbounded; there are no sentinel breakpoints.
class PiecewiseLinear {
 public:
  /// Validates continuity at every breakpoint and the slope pattern for
  /// (kind, target). Throws InvalidParameter on violation.
  PiecewiseLinear(std::vector<double> std_breakpoints, std::vector<double> std_slopes,
                  std::vector<double> std_intercepts, BoundKind kind, Target target,
                  NormalParams scale);

  BoundKind kind() const { return kind_; }
  Target target() const { return target_; }
  const NormalParams& scale() const { return scale_; }
  std::size_t segment_count() const { return slopes_.size(); }

  std::vector<double> breakpoints() const;
  std::vector<Segment> segments() const;

  std::span<const double> std_breakpoints() const { return breakpoints_; }
  std::span<const double> std_slopes() const { return slopes_; }
  std::span<const double> std_intercepts() const { return intercepts_; }

  double evaluate(double x) const;

  /// Same bound shifted vertically by `delta` (in rescaled units).
  PiecewiseLinear shifted(double delta, BoundKind kind) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> slopes_;
  std::vector<double> intercepts_;
  BoundKind kind_;
  Target target_;
  NormalParams scale_;
};

inline double evaluate(const PiecewiseLinear& pl, double x) { return pl.evaluate(x); }

/// Piecewise Jensen lower bound: tangents at b_i, breakpoints at the
/// conditional means.
PiecewiseLinear build_lower(const Partition& partition, const NormalParams& scale, Target target);

/// Upper bound obtained by lifting the lower bound by its maximum error.
/// Requires an equal-error partition to be tight; valid for any partition.
PiecewiseLinear build_upper_shift(const Partition& partition, const NormalParams& scale, Target target);

/// Chord (Edmundson-Madansky) upper bound through the exact function at the
/// given rescaled breakpoints, with a flat left tail and a unit-slope right
/// tail (before shearing). Throws InvalidParameter unless the breakpoints
/// are nonempty, finite, and strictly increasing.
PiecewiseLinear build_upper_chord(std::span<const double> domain_breakpoints, const NormalParams& scale,
                                  Target target);

/// Standard-scale point where a chord of the given slope is furthest from
/// closs_std: the tangency point inv_cdf(slope).
double upper_error_location(double segment_slope);

struct GapReport {
  double max_gap = 0.0;         // max |bound - exact|
  double argmax = 0.0;
  double min_signed_gap = 0.0;  // min of (exact - lower) or (upper - exact)
};

/// Grid search for the largest deviation from the exact loss function, on a
/// uniform grid plus the bound's own breakpoints inside the window. The
/// default window is mu +- 8 sigma widened to cover every breakpoint.
GapReport max_gap(const PiecewiseLinear& pl, int n_grid,
                  std::optional<std::pair<double, double>> window = std::nullopt);

/// Default grid window for a bound: mu +- 8 sigma, widened to the breakpoints.
std::pair<double, double> default_window(const PiecewiseLinear& pl);

struct BoundReport {
  PiecewiseLinear lower;
  PiecewiseLinear upper;
  double max_error;
  std::vector<double> lower_error_locations;
  std::vector<double> upper_error_locations;  // includes -inf and +inf
  Partition partition;
};

/// Lower bound plus shifted upper bound with their analytic error locations.
BoundReport build_report(const Partition& partition, const NormalParams& scale, Target target);

}  // namespace losslin
