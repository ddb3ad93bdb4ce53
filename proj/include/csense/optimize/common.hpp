#ifndef CSENSE_OPTIMIZE_COMMON_HPP
#define CSENSE_OPTIMIZE_COMMON_HPP

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "csense/error.hpp"
#include "csense/types.hpp"

namespace csense {

/// |s_i| at or below this counts as zero in nnz reporting.
inline constexpr double kZeroThreshold = 1e-10;

struct SolverConfig {
  double lambda = 0.0;
  int max_iters = 1000;
  double tol = 1e-8;
  int memory = 10;
  double ls_shrink = 0.5;
  double ls_c1 = 1e-4;
  int ls_max_shrinks = 50;

  void validate() const {
    detail::require(lambda >= 0.0 && std::isfinite(lambda), ErrorKind::range,
                    "lambda must be a nonnegative finite number");
    detail::require(max_iters >= 1, ErrorKind::range, "max_iters must be positive");
    detail::require(tol > 0.0 && std::isfinite(tol), ErrorKind::range, "tol must be positive");
    detail::require(memory >= 1, ErrorKind::range, "memory must be positive");
    detail::require(ls_shrink > 0.0 && ls_shrink < 1.0, ErrorKind::range,
                    "ls_shrink must lie in (0, 1)");
    detail::require(ls_c1 > 0.0 && ls_c1 < 1.0, ErrorKind::range, "ls_c1 must lie in (0, 1)");
    detail::require(ls_max_shrinks >= 1, ErrorKind::range, "ls_max_shrinks must be positive");
  }
};

struct SolveResult {
  SparseCoeffs coeffs;
  std::vector<double> objective_history;
  int iterations = 0;
  bool converged = false;
  std::size_t nnz = 0;

  double objective_final() const {
    return objective_history.empty() ? std::nan("") : objective_history.back();
  }
};

inline std::size_t count_nnz(const Vector& s, double threshold = kZeroThreshold) {
  std::size_t count = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (std::abs(s[i]) > threshold) ++count;
  }
  return count;
}

/// sign(z) max(|z| - t, 0)
inline double soft_threshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

}  // namespace csense

#endif  // CSENSE_OPTIMIZE_COMMON_HPP
