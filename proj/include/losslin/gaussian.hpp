#pragma once

// Standard-normal special functions. All functions are pure and thread-safe.

namespace losslin::gaussian {

inline constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934381868;
inline constexpr double kInvSqrt2 = 0.707106781186547524400844362104849039;

// Beyond this magnitude cdf() saturates to exactly 0 or 1.
inline constexpr double kSaturation = 38.0;

/// Standard normal density. Throws DomainError for non-finite x.
double phi(double x);

/// Standard normal CDF. Accepts +-infinity; throws DomainError for NaN.
double cdf(double x);

/// Upper tail 1 - cdf(x), computed without cancellation.
double ccdf(double x);

/// Inverse of cdf on (0, 1). Throws DomainError outside that interval.
double inv_cdf(double p);

}  // namespace losslin::gaussian
