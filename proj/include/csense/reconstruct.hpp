#ifndef CSENSE_RECONSTRUCT_HPP
#define CSENSE_RECONSTRUCT_HPP

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <future>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "csense/dct.hpp"
#include "csense/error.hpp"
#include "csense/image.hpp"
#include "csense/optimize/common.hpp"
#include "csense/optimize/continuation.hpp"
#include "csense/optimize/lasso_cd.hpp"
#include "csense/optimize/least_squares.hpp"
#include "csense/optimize/owlqn.hpp"
#include "csense/sampling.hpp"
#include "csense/theta.hpp"
#include "csense/types.hpp"

namespace csense {

enum class Solver { lasso_cd, owlqn };

inline std::string_view to_string(Solver s) {
  return s == Solver::lasso_cd ? "lasso_cd" : "owlqn";
}

/// Weight reproducing a scikit-learn style alpha, whose loss divides the
/// squared residual by 2p: lambda = p * alpha.
inline double lambda_from_alpha(double alpha, std::size_t p) {
  return alpha * static_cast<double>(p);
}

inline constexpr double kDefaultAlpha = 1e-4;

struct ChannelSummary {
  int iterations = 0;
  bool converged = false;
  std::size_t nnz = 0;
  double objective_final = 0.0;
};

struct ReconstructionReport {
  double fraction = 0.0;
  std::uint64_t seed = 0;
  Solver solver = Solver::owlqn;
  double lambda = 0.0;
  std::vector<ChannelSummary> per_channel;
  double psnr_db = 0.0;
  double rel_err_l2 = 0.0;
  double wall_ms = 0.0;

  bool converged() const {
    for (const auto& c : per_channel) {
      if (!c.converged) return false;
    }
    return true;
  }
};

inline ChannelSummary summarize(const SolveResult& r) {
  return ChannelSummary{r.iterations, r.converged, r.nnz, r.objective_final()};
}

/// Solves min 0.5 |Theta s - y|^2 + lambda |s|_1 for one channel and returns
/// the coefficient estimate. lasso_cd uses an explicit Theta up to the dense
/// cap and the matrix-free column design above it. With `continuation` the
/// solve is warm-started down a lambda schedule from |Theta^T y|_inf; each
/// stage gets cfg.max_iters.
inline SolveResult solve_coefficients(const SampleSet& samples, const SolverConfig& cfg,
                                      Solver solver, bool continuation = true) {
  samples.validate();
  cfg.validate();
  const ThetaOperator op(samples.n, samples.indices);
  const Vector zero = Vector::Zero(static_cast<Eigen::Index>(samples.n));
  const double lambda_max = op.adjoint(samples.values).lpNorm<Eigen::Infinity>();

  auto run = [&](auto&& stage_solver) {
    if (!continuation) return stage_solver(cfg, zero);
    return solve_with_continuation(stage_solver, cfg, lambda_max, zero);
  };

  if (solver == Solver::lasso_cd) {
    if (samples.n <= kDenseOracleCap) {
      const Matrix theta = op.dense();
      const DenseDesign design(theta);
      return run([&](const SolverConfig& c, const Vector& warm) {
        return lasso_cd(design, samples.values, c, &warm);
      });
    }
    const ThetaColumns design(op);
    return run([&](const SolverConfig& c, const Vector& warm) {
      return lasso_cd(design, samples.values, c, &warm);
    });
  }
  const LeastSquaresLoss<ThetaOperator> loss(op, samples.values);
  return run([&](const SolverConfig& c, const Vector& warm) { return owlqn_minimize(loss, warm, c); });
}

/// Solve, synthesize, clamp to [0, 1].
inline std::pair<Signal, SolveResult> reconstruct_channel(std::size_t n, const SampleSet& samples,
                                                          const SolverConfig& cfg, Solver solver) {
  detail::require(samples.n == n, ErrorKind::dimension,
                  "reconstruct_channel: sample set dimension does not match n");
  SolveResult result = solve_coefficients(samples, cfg, solver);
  Signal x = DctPlan(n).inverse(result.coeffs);
  clamp_unit(x);
  return {std::move(x), std::move(result)};
}

/// Image with every unsampled pixel set to zero (all channels).
inline ImageBuffer zero_filled(const ImageBuffer& img, const std::vector<std::size_t>& indices) {
  ImageBuffer out(img.width, img.height, img.channels);
  const std::size_t plane = img.plane_size();
  for (std::size_t c = 0; c < img.channels; ++c) {
    for (const std::size_t i : indices) {
      const auto at = static_cast<Eigen::Index>(c * plane + i);
      out.pixels[at] = img.pixels[at];
    }
  }
  return out;
}

inline double relative_error(const Vector& estimate, const Vector& truth) {
  const double denom = truth.norm();
  const double num = (estimate - truth).norm();
  return denom > 0.0 ? num / denom : num;
}

/// Reconstructs each channel from per-channel sample sets that share one
/// index set. Channels are solved concurrently; the result equals the
/// sequential one because every solve is deterministic.
inline std::pair<ImageBuffer, std::vector<SolveResult>> reconstruct_from_samples(
    std::size_t width, std::size_t height, const std::vector<SampleSet>& channels,
    const SolverConfig& cfg, Solver solver) {
  detail::require(!channels.empty(), ErrorKind::dimension, "no channels to reconstruct");
  const std::size_t n = width * height;
  for (const auto& set : channels) {
    detail::require(set.n == n, ErrorKind::dimension, "sample set does not match image size");
    detail::require(set.indices == channels.front().indices, ErrorKind::dimension,
                    "channels must share one index set");
  }
  std::vector<std::future<std::pair<Signal, SolveResult>>> jobs;
  jobs.reserve(channels.size());
  for (const auto& set : channels) {
    jobs.push_back(std::async(std::launch::async,
                              [&set, &cfg, n, solver] { return reconstruct_channel(n, set, cfg, solver); }));
  }
  ImageBuffer out(width, height, channels.size());
  std::vector<SolveResult> results;
  results.reserve(channels.size());
  for (std::size_t c = 0; c < jobs.size(); ++c) {
    auto [signal, result] = jobs[c].get();
    out.set_channel(c, signal);
    results.push_back(std::move(result));
  }
  return {std::move(out), std::move(results)};
}

/// Samples one index set from `seed` (shared across channels), reconstructs
/// every channel, and scores the result against `img`.
inline std::pair<ImageBuffer, ReconstructionReport> reconstruct_image(const ImageBuffer& img,
                                                                      double fraction,
                                                                      std::uint64_t seed,
                                                                      const SolverConfig& cfg,
                                                                      Solver solver) {
  const auto start = std::chrono::steady_clock::now();
  img.validate();
  cfg.validate();
  const std::vector<std::size_t> indices = sample_indices(img.plane_size(), fraction, seed);

  std::vector<SampleSet> channels;
  channels.reserve(img.channels);
  for (std::size_t c = 0; c < img.channels; ++c) channels.push_back(measure(img.channel(c), indices));

  auto [out, results] = reconstruct_from_samples(img.width, img.height, channels, cfg, solver);

  ReconstructionReport report;
  report.fraction = fraction;
  report.seed = seed;
  report.solver = solver;
  report.lambda = cfg.lambda;
  for (const auto& r : results) report.per_channel.push_back(summarize(r));
  report.psnr_db = psnr(out, img);
  report.rel_err_l2 = relative_error(out.pixels, img.pixels);
  report.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return {std::move(out), std::move(report)};
}

}  // namespace csense

#endif  // CSENSE_RECONSTRUCT_HPP
