#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace losslin {

/// A partition of the standard-normal support into adjacent regions
/// (-inf, b_1], [b_1, b_2], ..., [b_{N-1}, +inf).
///
/// `upper_limits` has one entry per region; the last is +infinity. Masses,
/// conditional means and breakpoint errors are derived from the boundaries
/// by `Partition::from_boundaries`, so a Partition is always self-consistent.
struct Partition {
  std::vector<double> upper_limits;
  std::vector<double> masses;
  std::vector<double> cond_means;
  std::vector<double> errors;  // lower-bound error at each conditional mean
  double max_error = 0.0;

  std::size_t n_regions() const { return upper_limits.size(); }
  /// Segment count of the associated lower bound (Table-style numbering).
  std::size_t n_segments() const { return n_regions() + 1; }
  /// Left end of region i (0-based); -inf for the first region.
  double lower_limit(std::size_t i) const;
  /// Finite interior boundaries b_1 .. b_{N-1}.
  std::span<const double> interior_boundaries() const {
    return {upper_limits.data(), upper_limits.size() - 1};
  }
  /// max e_i - min e_i.
  double error_spread() const;

  /// Builds a partition from strictly increasing finite interior boundaries.
  /// Throws InvalidParameter if they are not strictly increasing and finite.
  static Partition from_boundaries(std::span<const double> interior);
};

/// Lower-bound approximation error at the conditional mean of region
/// `index` (0-based): closs_std(m_i) - (Phi(b_i) m_i + phi(b_i)).
double breakpoint_error(std::size_t index, const Partition& partition);

struct SolverOptions {
  double tol = 1e-10;           // on sqrt(sum (e_1 - e_k)^2)
  int max_iterations = 200;
  double jacobian_step = 1e-7;
};

/// Minimax (equal-error) partition of the standard normal into `n_regions`
/// regions. Throws InvalidParameter for n_regions < 1 and SolverError when
/// Gauss-Newton does not converge.
Partition solve_minimax(int n_regions, const SolverOptions& options = {});

/// Minimax partitions for segment counts 2..max_segments.
std::vector<Partition> parameter_table(int max_segments, const SolverOptions& options = {});

}  // namespace losslin
