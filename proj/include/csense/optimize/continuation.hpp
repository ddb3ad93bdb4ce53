#ifndef CSENSE_OPTIMIZE_CONTINUATION_HPP
#define CSENSE_OPTIMIZE_CONTINUATION_HPP

#include <cmath>
#include <concepts>
#include <vector>

#include "csense/error.hpp"
#include "csense/optimize/common.hpp"
#include "csense/types.hpp"

namespace csense {

/// Geometric lambda schedule for warm-started solves: lambda_max * factor^k
/// for every term strictly above the target, then the target itself.
/// lambda_max = |Theta^T y|_inf is the smallest weight whose minimizer is 0.
inline std::vector<double> lambda_schedule(double lambda_max, double target, double factor) {
  detail::require(factor > 0.0 && factor < 1.0, ErrorKind::range,
                  "continuation factor must lie in (0, 1)");
  detail::require(target >= 0.0, ErrorKind::range, "target lambda must be nonnegative");
  std::vector<double> out;
  for (double lam = lambda_max * factor; lam > target && out.size() < 64; lam *= factor) {
    out.push_back(lam);
  }
  out.push_back(target);
  return out;
}

/// Runs `solve(cfg, warm_start)` along the schedule. The returned result is
/// the final stage's (its history is that of the target problem) with
/// iterations summed over all stages; converged reflects the final stage.
template <class Solve>
  requires std::invocable<Solve, const SolverConfig&, const Vector&>
SolveResult solve_with_continuation(Solve&& solve, const SolverConfig& cfg, double lambda_max,
                                    const Vector& x0, double factor = 0.1) {
  int total_iterations = 0;
  Vector warm = x0;
  SolveResult result;
  for (const double lam : lambda_schedule(lambda_max, cfg.lambda, factor)) {
    SolverConfig stage = cfg;
    stage.lambda = lam;
    result = solve(stage, warm);
    total_iterations += result.iterations;
    warm = result.coeffs;
  }
  result.iterations = total_iterations;
  return result;
}

}  // namespace csense

#endif  // CSENSE_OPTIMIZE_CONTINUATION_HPP
