#pragma once

#include <functional>
#include <limits>

namespace losslin {

/// Mean and standard deviation of a normal random variable.
struct NormalParams {
  double mu = 0.0;
  double sigma = 1.0;

  /// Throws InvalidParameter unless sigma is finite and positive and mu finite.
  void validate() const;

  static NormalParams standard() { return {0.0, 1.0}; }

  double standardize(double x) const { return (x - mu) / sigma; }
  double destandardize(double z) const { return mu + sigma * z; }

  friend bool operator==(const NormalParams&, const NormalParams&) = default;
};

/// Which of the two loss functions a computation refers to.
///   loss:  E[max(w - x, 0)]
///   closs: E[max(x - w, 0)]
enum class Target { loss, closs };

const char* to_string(Target target);
Target parse_target(const char* name);

/// A continuous distribution described by its CDF. Used only for the
/// quadrature evaluation path.
struct GenericDistribution {
  std::function<double(double)> cdf;
  double mean = 0.0;
  double support_low = -std::numeric_limits<double>::infinity();
  double support_high = std::numeric_limits<double>::infinity();
  // Rough spread, used to truncate infinite support ends at mean -+ 12 * scale.
  double scale = 1.0;

  static GenericDistribution normal(NormalParams params);
};

inline constexpr double kDefaultQuadratureTol = 1e-10;

// Closed forms for the standard normal Z.
double closs_std(double x);  // phi(x) + Phi(x) x
double loss_std(double x);   // phi(x) - (1 - Phi(x)) x

// General normal via standardisation.
double closs(double x, const NormalParams& params);
double loss(double x, const NormalParams& params);
double evaluate_loss(Target target, double x, const NormalParams& params);

/// integral of G over (support_low, x], by adaptive Gauss-Kronrod.
/// Throws AccuracyError if the requested absolute tolerance is not reached.
double closs_generic(double x, const GenericDistribution& dist, double tol = kDefaultQuadratureTol);

/// integral of 1 - G over [x, support_high).
double loss_generic(double x, const GenericDistribution& dist, double tol = kDefaultQuadratureTol);

}  // namespace losslin
