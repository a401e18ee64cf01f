#include "losslin/partition.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <string>

#include "losslin/errors.hpp"
#include "losslin/gaussian.hpp"
#include "losslin/loss.hpp"

namespace losslin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Probability of [a, b], evaluated in whichever tail keeps precision.
double mass_between(double a, double b) {
  if (a >= 0.0) return gaussian::ccdf(a) - gaussian::ccdf(b);
  return gaussian::cdf(b) - gaussian::cdf(a);
}

double density_or_zero(double x) { return std::isfinite(x) ? gaussian::phi(x) : 0.0; }

// Interior boundaries generated from the free negative ones by reflection.
std::vector<double> symmetric_boundaries(std::span<const double> negatives, int n_regions) {
  std::vector<double> out(negatives.begin(), negatives.end());
  if (n_regions % 2 == 0) out.push_back(0.0);
  for (auto it = negatives.rbegin(); it != negatives.rend(); ++it) out.push_back(-*it);
  return out;
}

bool strictly_increasing(std::span<const double> values) {
  return std::adjacent_find(values.begin(), values.end(), std::greater_equal<>()) == values.end();
}

}  // namespace

double Partition::lower_limit(std::size_t i) const { return i == 0 ? -kInf : upper_limits.at(i - 1); }

double Partition::error_spread() const {
  const auto [lo, hi] = std::minmax_element(errors.begin(), errors.end());
  return *hi - *lo;
}

Partition Partition::from_boundaries(std::span<const double> interior) {
  for (double b : interior) {
    if (!std::isfinite(b)) throw InvalidParameter("partition boundaries must be finite");
  }
  if (!strictly_increasing(interior)) {
    throw InvalidParameter("partition boundaries must be strictly increasing");
  }
  Partition p;
  p.upper_limits.assign(interior.begin(), interior.end());
  p.upper_limits.push_back(kInf);
  const std::size_t n = p.upper_limits.size();
  p.masses.resize(n);
  p.cond_means.resize(n);
  p.errors.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = p.lower_limit(i);
    const double b = p.upper_limits[i];
    p.masses[i] = mass_between(a, b);
    if (!(p.masses[i] > 0.0)) {
      throw InvalidParameter("partition region " + std::to_string(i + 1) + " has zero mass");
    }
    p.cond_means[i] = (density_or_zero(a) - density_or_zero(b)) / p.masses[i];
  }
  for (std::size_t i = 0; i < n; ++i) p.errors[i] = breakpoint_error(i, p);
  p.max_error = *std::max_element(p.errors.begin(), p.errors.end());
  return p;
}

double breakpoint_error(std::size_t index, const Partition& partition) {
  if (index >= partition.n_regions() || index >= partition.cond_means.size()) {
    throw InvalidParameter("breakpoint index " + std::to_string(index) + " out of range");
  }
  const double m = partition.cond_means[index];
  const double b = partition.upper_limits[index];
  // Segment i of the lower bound is the tangent at b_i: Phi(b_i) x + phi(b_i).
  return closs_std(m) - (gaussian::cdf(b) * m + density_or_zero(b));
}

Partition solve_minimax(int n_regions, const SolverOptions& options) {
  if (n_regions < 1) throw InvalidParameter("n_regions must be at least 1");
  if (!(options.tol > 0.0)) throw InvalidParameter("solver tolerance must be positive");

  const int n_free = (n_regions - 1) / 2;
  // Closed cases: a single region (Jensen) and two regions split at the mean.
  if (n_free == 0) {
    const auto interior = symmetric_boundaries({}, n_regions);
    return Partition::from_boundaries(interior);
  }

  // Residuals e_1 - e_k for k = 2..ceil(N/2); the other half follows by symmetry.
  const int n_residuals = (n_regions + 1) / 2 - 1;
  const auto residuals = [&](const Eigen::VectorXd& u, Eigen::VectorXd& r) -> bool {
    const std::span<const double> neg(u.data(), static_cast<std::size_t>(u.size()));
    const auto interior = symmetric_boundaries(neg, n_regions);
    if (!strictly_increasing(interior)) return false;
    Partition p;
    try {
      p = Partition::from_boundaries(interior);
    } catch (const InvalidParameter&) {
      return false;
    }
    r.resize(n_residuals);
    for (int k = 0; k < n_residuals; ++k) r[k] = p.errors[0] - p.errors[k + 1];
    return true;
  };

  Eigen::VectorXd u(n_free);
  for (int i = 0; i < n_free; ++i) u[i] = gaussian::inv_cdf(double(i + 1) / n_regions);

  Eigen::VectorXd r;
  if (!residuals(u, r)) throw SolverError("invalid starting point", {}, kInf);
  double norm = r.norm();

  Eigen::MatrixXd jac(n_residuals, n_free);
  Eigen::VectorXd r_step;
  const auto to_vector = [](const Eigen::VectorXd& v) { return std::vector<double>(v.begin(), v.end()); };

  for (int iter = 0; iter < options.max_iterations && norm > options.tol; ++iter) {
    for (int j = 0; j < n_free; ++j) {
      Eigen::VectorXd shifted = u;
      shifted[j] += options.jacobian_step;
      if (!residuals(shifted, r_step)) {
        shifted[j] = u[j] - options.jacobian_step;
        if (!residuals(shifted, r_step)) {
          throw SolverError("cannot form Jacobian", to_vector(u), norm);
        }
        jac.col(j) = (r - r_step) / options.jacobian_step;
      } else {
        jac.col(j) = (r_step - r) / options.jacobian_step;
      }
    }
    const Eigen::VectorXd step = jac.colPivHouseholderQr().solve(-r);

    double scale = 1.0;
    bool improved = false;
    for (int halving = 0; halving < 40; ++halving, scale *= 0.5) {
      const Eigen::VectorXd trial = u + scale * step;
      if (residuals(trial, r_step) && r_step.norm() < norm) {
        u = trial;
        r = r_step;
        norm = r.norm();
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }

  if (!(norm <= options.tol)) {
    throw SolverError("Gauss-Newton did not converge for " + std::to_string(n_regions) +
                          " regions (residual " + std::to_string(norm) + ")",
                      to_vector(u), norm);
  }
  const std::span<const double> neg(u.data(), static_cast<std::size_t>(u.size()));
  Partition result = Partition::from_boundaries(symmetric_boundaries(neg, n_regions));
  if (!std::is_sorted(result.cond_means.begin(), result.cond_means.end())) {
    throw SolverError("solution has non-monotone conditional means", to_vector(u), norm);
  }
  return result;
}

std::vector<Partition> parameter_table(int max_segments, const SolverOptions& options) {
  if (max_segments < 2) throw InvalidParameter("max_segments must be at least 2");
  std::vector<std::future<Partition>> pending;
  for (int segments = 2; segments <= max_segments; ++segments) {
    pending.push_back(std::async(std::launch::async, [segments, options] {
      try {
        return solve_minimax(segments - 1, options);
      } catch (const SolverError& e) {
        throw SolverError("segments=" + std::to_string(segments) + ": " + e.what(), e.best_iterate(),
                          e.residual());
      }
    }));
  }
  std::vector<Partition> table;
  table.reserve(pending.size());
  for (auto& f : pending) table.push_back(f.get());
  return table;
}

}  // namespace losslin
