#include "losslin/gaussian.hpp"

#include <array>
#include <cmath>
#include <string>

#include "losslin/errors.hpp"

namespace losslin::gaussian {

namespace {

// Acklam's rational approximation to the normal quantile, relative error ~1e-9.
// Used only as a starting point for Halley refinement.
double quantile_estimate(double p) {
  static constexpr std::array<double, 6> a = {-3.969683028665376e+01, 2.209460984245205e+02,
                                              -2.759285104469687e+02, 1.383577518672690e+02,
                                              -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array<double, 5> b = {-5.447609879822406e+01, 1.615858368580409e+02,
                                              -1.556989798598866e+02, 6.680131188771972e+01,
                                              -1.328068155288572e+01};
  static constexpr std::array<double, 6> c = {-7.784894002430293e-03, -3.223964580411365e-01,
                                              -2.400758277161838e+00, -2.549732539343734e+00,
                                              4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr std::array<double, 4> d = {7.784695709041462e-03, 3.224671290700398e-01,
                                              2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - p_low) {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double phi(double x) {
  if (!std::isfinite(x)) {
    throw DomainError("phi: argument must be finite");
  }
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double cdf(double x) {
  if (std::isnan(x)) {
    throw DomainError("cdf: argument is NaN");
  }
  if (x <= -kSaturation) return 0.0;
  if (x >= kSaturation) return 1.0;
  if (x == 0.0) return 0.5;
  return 0.5 * std::erfc(-x * kInvSqrt2);
}

double ccdf(double x) {
  if (std::isnan(x)) {
    throw DomainError("ccdf: argument is NaN");
  }
  return cdf(-x);
}

double inv_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("inv_cdf: probability must lie in (0, 1), got " + std::to_string(p));
  }
  if (p == 0.5) return 0.0;

  // Work in the tail closer to p so the residual keeps full relative precision.
  const bool upper = p > 0.5;
  const double tail = upper ? 1.0 - p : p;
  double x = quantile_estimate(tail);  // x < 0
  for (int iter = 0; iter < 3; ++iter) {
    const double density = kInvSqrt2Pi * std::exp(-0.5 * x * x);
    if (density == 0.0) break;
    const double u = (cdf(x) - tail) / density;
    // Halley step; the second-order term uses phi'(x) = -x phi(x).
    const double step = u / (1.0 + 0.5 * x * u);
    x -= step;
    if (std::abs(step) <= 1e-16 * std::abs(x)) break;
  }
  return upper ? -x : x;
}

}  // namespace losslin::gaussian
