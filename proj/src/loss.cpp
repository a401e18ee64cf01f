#include "losslin/loss.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstring>
#include <queue>
#include <string>

#include "losslin/errors.hpp"
#include "losslin/gaussian.hpp"

namespace losslin {

namespace {

constexpr int kMaxSubdivisions = 2000;

void check_tolerance(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw InvalidParameter("quadrature tolerance must be positive");
  }
}

// Walk outward from the mean until the integrand tail is negligible.
double truncation_point(const GenericDistribution& dist, double tol, bool lower) {
  const double sign = lower ? -1.0 : 1.0;
  double span = 12.0 * dist.scale;
  for (int i = 0; i < 60; ++i) {
    const double t = dist.mean + sign * span;
    const double tail = lower ? dist.cdf(t) : 1.0 - dist.cdf(t);
    if (tail * span <= tol * 1e-3) return t;
    span *= 2.0;
  }
  return dist.mean + sign * span;
}

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

// Globally adaptive G7/K15: repeatedly bisect the panel with the largest
// error estimate until the summed estimate meets the absolute tolerance.
template <class F>
double integrate(const F& f, double a, double b, double tol, const char* what) {
  if (!(b > a)) return 0.0;
  using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
  const auto make_panel = [&f](double lo, double hi) {
    Panel p{lo, hi, 0.0, 0.0};
    p.value = Rule::integrate(f, lo, hi, 0, 0.0, &p.error);
    return p;
  };

  std::priority_queue<Panel> panels;
  double total = 0.0;
  double total_error = 0.0;
  // Seed with a few panels so a narrow feature is not missed by a single rule.
  constexpr int kSeed = 8;
  for (int k = 0; k < kSeed; ++k) {
    const double lo = a + (b - a) * k / kSeed;
    const double hi = (k + 1 == kSeed) ? b : a + (b - a) * (k + 1) / kSeed;
    Panel p = make_panel(lo, hi);
    total += p.value;
    total_error += p.error;
    panels.push(p);
  }
  for (int split = 0; total_error > tol && split < kMaxSubdivisions; ++split) {
    const Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) break;  // cannot bisect further
    const Panel left = make_panel(worst.lo, mid);
    const Panel right = make_panel(mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }
  if (!(total_error <= tol)) {
    // Re-sum to drop accumulated rounding in the running totals.
    total_error = 0.0;
    total = 0.0;
    for (; !panels.empty(); panels.pop()) {
      total += panels.top().value;
      total_error += panels.top().error;
    }
    if (!(total_error <= tol)) {
      throw AccuracyError(std::string(what) + ": quadrature did not reach tolerance " +
                              std::to_string(tol) + " (error estimate " +
                              std::to_string(total_error) + ")",
                          total, total_error);
    }
  }
  return total;
}

void validate(const GenericDistribution& dist) {
  if (!dist.cdf) throw InvalidParameter("generic distribution has no cdf");
  if (!std::isfinite(dist.mean)) throw InvalidParameter("generic distribution mean must be finite");
  if (!(dist.scale > 0.0)) throw InvalidParameter("generic distribution scale must be positive");
  if (!(dist.support_low < dist.support_high)) {
    throw InvalidParameter("generic distribution support is empty");
  }
}

}  // namespace

void NormalParams::validate() const {
  if (!std::isfinite(mu)) throw InvalidParameter("mu must be finite");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw InvalidParameter("sigma must be positive and finite, got " + std::to_string(sigma));
  }
}

const char* to_string(Target target) { return target == Target::loss ? "loss" : "closs"; }

Target parse_target(const char* name) {
  if (std::strcmp(name, "loss") == 0) return Target::loss;
  if (std::strcmp(name, "closs") == 0) return Target::closs;
  throw InvalidParameter(std::string("unknown target '") + name + "' (expected loss or closs)");
}

GenericDistribution GenericDistribution::normal(NormalParams params) {
  params.validate();
  GenericDistribution dist;
  dist.cdf = [params](double t) { return gaussian::cdf(params.standardize(t)); };
  dist.mean = params.mu;
  dist.scale = params.sigma;
  return dist;
}

double closs_std(double x) {
  if (std::isnan(x)) throw DomainError("closs_std: argument is NaN");
  if (x < -gaussian::kSaturation) return 0.0;
  if (x > gaussian::kSaturation) return x;
  return gaussian::phi(x) + gaussian::cdf(x) * x;
}

double loss_std(double x) {
  if (std::isnan(x)) throw DomainError("loss_std: argument is NaN");
  if (x > gaussian::kSaturation) return 0.0;
  if (x < -gaussian::kSaturation) return -x;
  return gaussian::phi(x) - gaussian::ccdf(x) * x;
}

double closs(double x, const NormalParams& params) {
  params.validate();
  return params.sigma * closs_std(params.standardize(x));
}

double loss(double x, const NormalParams& params) {
  params.validate();
  return params.sigma * loss_std(params.standardize(x));
}

double evaluate_loss(Target target, double x, const NormalParams& params) {
  return target == Target::loss ? loss(x, params) : closs(x, params);
}

double closs_generic(double x, const GenericDistribution& dist, double tol) {
  validate(dist);
  check_tolerance(tol);
  if (std::isnan(x)) throw DomainError("closs_generic: argument is NaN");
  double lo = dist.support_low;
  if (!std::isfinite(lo)) lo = std::min(truncation_point(dist, tol, true), x);
  const double hi = std::min(x, dist.support_high);
  double value = integrate(dist.cdf, lo, hi, tol, "closs_generic");
  // Above the support G == 1.
  if (x > dist.support_high) value += x - dist.support_high;
  return value;
}

double loss_generic(double x, const GenericDistribution& dist, double tol) {
  validate(dist);
  check_tolerance(tol);
  if (std::isnan(x)) throw DomainError("loss_generic: argument is NaN");
  double hi = dist.support_high;
  if (!std::isfinite(hi)) hi = std::max(truncation_point(dist, tol, false), x);
  const double lo = std::max(x, dist.support_low);
  const auto survival = [&dist](double t) { return 1.0 - dist.cdf(t); };
  double value = integrate(survival, lo, hi, tol, "loss_generic");
  if (x < dist.support_low) value += dist.support_low - x;
  return value;
}

}  // namespace losslin
