#include "losslin/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "losslin/errors.hpp"
#include "losslin/gaussian.hpp"

namespace losslin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kContinuityTol = 1e-10;

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidParameter(message);
}

void check_partition(const Partition& p) {
  const std::size_t n = p.n_regions();
  require(n >= 1, "partition has no regions");
  require(p.masses.size() == n && p.cond_means.size() == n && p.errors.size() == n,
          "partition arrays have inconsistent lengths");
  require(std::isinf(p.upper_limits.back()), "last partition limit must be +inf");
  require(std::is_sorted(p.cond_means.begin(), p.cond_means.end()),
          "partition conditional means must be increasing");
}

// Shear a closs-target standard-scale bound into the loss target: L = Lc - z.
void shear_to_loss(std::vector<double>& slopes) {
  for (double& s : slopes) s -= 1.0;
}

}  // namespace

const char* to_string(BoundKind kind) { return kind == BoundKind::lower ? "lower" : "upper"; }

PiecewiseLinear::PiecewiseLinear(std::vector<double> std_breakpoints, std::vector<double> std_slopes,
                                 std::vector<double> std_intercepts, BoundKind kind, Target target,
                                 NormalParams scale)
    : breakpoints_(std::move(std_breakpoints)),
      slopes_(std::move(std_slopes)),
      intercepts_(std::move(std_intercepts)),
      kind_(kind),
      target_(target),
      scale_(scale) {
  scale_.validate();
  require(!slopes_.empty(), "piecewise-linear function needs at least one segment");
  require(slopes_.size() == intercepts_.size(), "slope and intercept counts differ");
  require(breakpoints_.size() + 1 == slopes_.size(), "segments must equal breakpoints + 1");
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    require(std::isfinite(breakpoints_[i]), "breakpoints must be finite");
    if (i > 0) require(breakpoints_[i] > breakpoints_[i - 1], "breakpoints must be strictly increasing");
    const double z = breakpoints_[i];
    const double left = slopes_[i] * z + intercepts_[i];
    const double right = slopes_[i + 1] * z + intercepts_[i + 1];
    require(std::abs(left - right) <= kContinuityTol * std::max(1.0, std::abs(z)),
            "segments disagree at breakpoint " + std::to_string(i));
  }

  // Slope pattern, stated for the closs target; loss is the same pattern shifted by -1.
  const double offset = target_ == Target::loss ? -1.0 : 0.0;
  constexpr double eps = 1e-12;
  require(std::abs(slopes_.front() - offset) <= eps, "first slope must be " + std::to_string(offset));
  require(std::abs(slopes_.back() - (offset + 1.0)) <= eps,
          "last slope must be " + std::to_string(offset + 1.0));
  for (std::size_t i = 1; i < slopes_.size(); ++i) {
    if (kind_ == BoundKind::lower) {
      require(slopes_[i] > slopes_[i - 1], "lower-bound slopes must be strictly increasing");
    } else {
      require(slopes_[i] >= slopes_[i - 1] - eps, "upper-bound slopes must be nondecreasing");
    }
  }
}

std::vector<double> PiecewiseLinear::breakpoints() const {
  std::vector<double> out;
  out.reserve(breakpoints_.size());
  for (double z : breakpoints_) out.push_back(scale_.destandardize(z));
  return out;
}

std::vector<Segment> PiecewiseLinear::segments() const {
  std::vector<Segment> out;
  out.reserve(slopes_.size());
  const auto bps = breakpoints();
  for (std::size_t i = 0; i < slopes_.size(); ++i) {
    // sigma * (s * (x - mu) / sigma + c) = s x + (sigma c - s mu)
    out.push_back({slopes_[i], scale_.sigma * intercepts_[i] - slopes_[i] * scale_.mu,
                   i == 0 ? -kInf : bps[i - 1], i == bps.size() ? kInf : bps[i]});
  }
  return out;
}

double PiecewiseLinear::evaluate(double x) const {
  const double z = scale_.standardize(x);
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), z);
  const auto i = static_cast<std::size_t>(it - breakpoints_.begin());
  return scale_.sigma * (slopes_[i] * z + intercepts_[i]);
}

PiecewiseLinear PiecewiseLinear::shifted(double delta, BoundKind kind) const {
  std::vector<double> intercepts = intercepts_;
  for (double& c : intercepts) c += delta / scale_.sigma;
  return PiecewiseLinear(breakpoints_, slopes_, std::move(intercepts), kind, target_, scale_);
}

PiecewiseLinear build_lower(const Partition& partition, const NormalParams& scale, Target target) {
  check_partition(partition);
  scale.validate();
  const std::size_t n = partition.n_regions();
  std::vector<double> slopes{0.0};
  std::vector<double> intercepts{0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const double b = partition.upper_limits[i];
    slopes.push_back(gaussian::cdf(b));
    intercepts.push_back(std::isfinite(b) ? gaussian::phi(b) : 0.0);
  }
  if (target == Target::loss) shear_to_loss(slopes);
  return PiecewiseLinear(partition.cond_means, std::move(slopes), std::move(intercepts), BoundKind::lower,
                         target, scale);
}

PiecewiseLinear build_upper_shift(const Partition& partition, const NormalParams& scale, Target target) {
  return build_lower(partition, scale, target).shifted(scale.sigma * partition.max_error, BoundKind::upper);
}

PiecewiseLinear build_upper_chord(std::span<const double> domain_breakpoints, const NormalParams& scale,
                                  Target target) {
  scale.validate();
  require(!domain_breakpoints.empty(), "chord bound needs at least one breakpoint");
  std::vector<double> z;
  z.reserve(domain_breakpoints.size());
  for (double x : domain_breakpoints) {
    require(std::isfinite(x), "chord breakpoints must be finite");
    z.push_back(scale.standardize(x));
  }
  for (std::size_t i = 1; i < z.size(); ++i) {
    require(z[i] > z[i - 1], "chord breakpoints must be strictly increasing");
  }

  std::vector<double> values;
  values.reserve(z.size());
  for (double t : z) values.push_back(closs_std(t));

  std::vector<double> slopes{0.0};
  std::vector<double> intercepts{values.front()};
  for (std::size_t i = 0; i + 1 < z.size(); ++i) {
    const double a = z[i];
    const double b = z[i + 1];
    slopes.push_back((values[i + 1] - values[i]) / (b - a));
    intercepts.push_back((b * values[i] - a * values[i + 1]) / (b - a));
  }
  slopes.push_back(1.0);
  intercepts.push_back(values.back() - z.back());
  if (target == Target::loss) shear_to_loss(slopes);
  return PiecewiseLinear(std::move(z), std::move(slopes), std::move(intercepts), BoundKind::upper, target,
                         scale);
}

double upper_error_location(double segment_slope) {
  if (!(segment_slope > 0.0 && segment_slope < 1.0)) {
    throw InvalidParameter("segment slope must lie in (0, 1), got " + std::to_string(segment_slope));
  }
  return gaussian::inv_cdf(segment_slope);
}

std::pair<double, double> default_window(const PiecewiseLinear& pl) {
  const NormalParams& s = pl.scale();
  double lo = s.mu - 8.0 * s.sigma;
  double hi = s.mu + 8.0 * s.sigma;
  const auto bps = pl.breakpoints();
  if (!bps.empty()) {
    lo = std::min(lo, bps.front());
    hi = std::max(hi, bps.back());
  }
  return {lo, hi};
}

GapReport max_gap(const PiecewiseLinear& pl, int n_grid, std::optional<std::pair<double, double>> window) {
  if (n_grid < 100) throw InvalidParameter("max_gap needs at least 100 grid points");
  const auto [lo, hi] = window.value_or(default_window(pl));
  require(hi > lo, "max_gap window is empty");

  GapReport report;
  report.min_signed_gap = kInf;
  report.max_gap = -1.0;
  const auto visit = [&](double x) {
    const double exact = evaluate_loss(pl.target(), x, pl.scale());
    const double bound = pl.evaluate(x);
    const double signed_gap = pl.kind() == BoundKind::lower ? exact - bound : bound - exact;
    report.min_signed_gap = std::min(report.min_signed_gap, signed_gap);
    if (std::abs(signed_gap) > report.max_gap) {
      report.max_gap = std::abs(signed_gap);
      report.argmax = x;
    }
  };
  for (int k = 0; k < n_grid; ++k) visit(lo + (hi - lo) * k / (n_grid - 1));
  // The gap has kinks at the breakpoints, where a uniform grid is only first-order accurate.
  for (double x : pl.breakpoints()) {
    if (x >= lo && x <= hi) visit(x);
  }
  return report;
}

BoundReport build_report(const Partition& partition, const NormalParams& scale, Target target) {
  PiecewiseLinear lower = build_lower(partition, scale, target);
  PiecewiseLinear upper = lower.shifted(scale.sigma * partition.max_error, BoundKind::upper);

  std::vector<double> upper_locations{-kInf};
  for (double b : partition.interior_boundaries()) upper_locations.push_back(scale.destandardize(b));
  upper_locations.push_back(kInf);

  std::vector<double> lower_locations = lower.breakpoints();
  return BoundReport{std::move(lower),
                     std::move(upper),
                     scale.sigma * partition.max_error,
                     std::move(lower_locations),
                     std::move(upper_locations),
                     partition};
}

}  // namespace losslin
