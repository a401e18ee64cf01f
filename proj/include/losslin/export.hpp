#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "losslin/bounds.hpp"
#include "losslin/partition.hpp"

namespace losslin {

/// Serializable coefficients of one bound.
struct BoundCoefficients {
  BoundKind kind = BoundKind::lower;
  std::vector<double> breakpoints;
  std::vector<Segment> segments;
  std::vector<double> error_locations;

  friend bool operator==(const BoundCoefficients&, const BoundCoefficients&);
};

/// Everything a MILP model needs to embed the bounds, plus the partition it
/// was derived from (standard-normal units).
struct ExportBundle {
  int segments = 0;  // lower-bound segment count
  Target target = Target::closs;
  double mu = 0.0;
  double sigma = 1.0;
  double max_error = 0.0;
  std::string version;

  std::vector<double> boundaries;  // finite b_i only
  std::vector<double> masses;
  std::vector<double> cond_means;

  BoundCoefficients lower;
  BoundCoefficients upper;

  friend bool operator==(const ExportBundle&, const ExportBundle&);
};

ExportBundle make_bundle(const BoundReport& report);

/// JSON document with a fixed key order. Numbers round-trip exactly;
/// unbounded segment ends are null and infinite locations are "-inf"/"inf".
std::string to_json(const ExportBundle& bundle);
std::string to_json(const BoundReport& report);

/// Inverse of to_json. Throws InvalidParameter on malformed input.
ExportBundle parse_json(std::string_view text);

/// Table of partition parameters: one b/p/m row triple per segment count.
std::string to_csv_table(const std::vector<Partition>& partitions, int significant_digits = 17);

/// LP-file constraint text. For the lower bound: one epigraph inequality per
/// segment. For the upper bound: breakpoint/value pairs and a lambda
/// formulation table, all as comments.
std::string to_lp_constraints(const BoundReport& report, std::string_view var_x = "x",
                              std::string_view var_l = "L", BoundKind kind = BoundKind::lower);

/// CSV columns x, exact, lower, upper, gap_lower, gap_upper on a uniform grid
/// of `n_points` merged with the lower bound's breakpoints.
std::string plot_data(const BoundReport& report, int n_points);

/// printf("%.*g") with a normalised negative zero.
std::string format_real(double value, int significant_digits = 17);

}  // namespace losslin
