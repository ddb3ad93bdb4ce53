#ifndef CSENSE_COMPARE_HPP
#define CSENSE_COMPARE_HPP

#include <chrono>
#include <cmath>
#include <cstddef>
#include <string>

#include "csense/dct.hpp"
#include "csense/optimize/continuation.hpp"
#include "csense/optimize/lasso_cd.hpp"
#include "csense/optimize/least_squares.hpp"
#include "csense/optimize/owlqn.hpp"
#include "csense/sampling.hpp"
#include "csense/theta.hpp"

namespace csense {

struct SolverRun {
  bool ran = false;
  std::string refusal;       // why the run was skipped
  double objective = std::nan("");
  int iterations = 0;
  bool converged = false;
  std::size_t nnz = 0;
  double wall_ms = 0.0;
  std::size_t state_bytes = 0;  // dense Theta bytes or operator bytes
};

struct SolverComparison {
  std::size_t n = 0;
  std::size_t p = 0;
  double lambda = 0.0;
  SolverRun lasso;
  SolverRun owlqn;
  double objective_rel_diff = std::nan("");
  bool objectives_agree = false;
};

inline constexpr double kAgreementTolerance = 1e-5;

/// Runs dense coordinate descent and matrix-free OWL-QN on one instance and
/// scores both minimizers with the same objective. The dense run is refused
/// when n exceeds the dense cap.
inline SolverComparison compare_solvers(const SampleSet& samples, const SolverConfig& cfg) {
  samples.validate();
  cfg.validate();
  using Clock = std::chrono::steady_clock;
  const ThetaOperator op(samples.n, samples.indices);
  const LeastSquaresLoss<ThetaOperator> loss(op, samples.values);
  const Vector zero = Vector::Zero(static_cast<Eigen::Index>(samples.n));
  const double lambda_max = op.adjoint(samples.values).lpNorm<Eigen::Infinity>();

  SolverComparison out;
  out.n = samples.n;
  out.p = samples.size();
  out.lambda = cfg.lambda;

  if (samples.n > kDenseOracleCap) {
    out.lasso.refusal = "dense Theta would need " +
                        std::to_string(samples.size() * samples.n * sizeof(double)) +
                        " bytes; n = " + std::to_string(samples.n) + " exceeds the dense cap of " +
                        std::to_string(kDenseOracleCap);
  } else {
    const auto start = Clock::now();
    const Matrix theta = op.dense();
    const DenseDesign design(theta);
    const SolveResult r = solve_with_continuation(
        [&](const SolverConfig& c, const Vector& warm) {
          return lasso_cd(design, samples.values, c, &warm);
        },
        cfg, lambda_max, zero);
    out.lasso.ran = true;
    out.lasso.objective = loss.lasso_objective(r.coeffs, cfg.lambda);
    out.lasso.iterations = r.iterations;
    out.lasso.converged = r.converged;
    out.lasso.nnz = r.nnz;
    out.lasso.state_bytes = static_cast<std::size_t>(theta.size()) * sizeof(double);
    out.lasso.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  }

  {
    const auto start = Clock::now();
    const SolveResult r = solve_with_continuation(
        [&](const SolverConfig& c, const Vector& warm) { return owlqn_minimize(loss, warm, c); }, cfg,
        lambda_max, zero);
    out.owlqn.ran = true;
    out.owlqn.objective = loss.lasso_objective(r.coeffs, cfg.lambda);
    out.owlqn.iterations = r.iterations;
    out.owlqn.converged = r.converged;
    out.owlqn.nnz = r.nnz;
    out.owlqn.state_bytes = op.state_bytes();
    out.owlqn.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  }

  if (out.lasso.ran) {
    const double scale = std::max(std::abs(out.lasso.objective), std::abs(out.owlqn.objective));
    out.objective_rel_diff =
        scale > 0.0 ? std::abs(out.lasso.objective - out.owlqn.objective) / scale : 0.0;
    out.objectives_agree = out.objective_rel_diff <= kAgreementTolerance;
  }
  return out;
}

}  // namespace csense

#endif  // CSENSE_COMPARE_HPP
