#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace losslin {

// Argument outside the mathematical domain of a function (NaN, p outside (0,1), ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Structurally invalid input: sigma <= 0, unsorted breakpoints, bad index.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Quadrature that ran out of subdivisions before reaching the requested tolerance.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double estimate, double error_estimate)
      : std::runtime_error(what), estimate_(estimate), error_estimate_(error_estimate) {}

  double estimate() const noexcept { return estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double estimate_;
  double error_estimate_;
};

// Gauss-Newton failed to converge. Carries the best iterate seen (negative
// interior boundaries) and its residual norm.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::vector<double> best_iterate, double residual)
      : std::runtime_error(what), best_iterate_(std::move(best_iterate)), residual_(residual) {}

  const std::vector<double>& best_iterate() const noexcept { return best_iterate_; }
  double residual() const noexcept { return residual_; }

 private:
  std::vector<double> best_iterate_;
  double residual_;
};

}  // namespace losslin
