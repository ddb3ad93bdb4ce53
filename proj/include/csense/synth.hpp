#ifndef CSENSE_SYNTH_HPP
#define CSENSE_SYNTH_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "csense/dct.hpp"
#include "csense/error.hpp"
#include "csense/reconstruct.hpp"
#include "csense/rng.hpp"
#include "csense/sampling.hpp"
#include "csense/types.hpp"

namespace csense {

/// Recovery experiment on k-sparse DCT-domain signals.
struct SynthConfig {
  std::size_t n = 256;
  std::size_t k = 4;
  std::size_t p = 0;                 // measurements per trial
  std::optional<double> k1;          // set when p came from estimate_measurements
  std::size_t trials = 20;
  std::uint64_t seed = 0;
  Solver solver = Solver::owlqn;
  SolverConfig solver_cfg{};
  double support_threshold = 1e-6;

  void validate() const {
    detail::require(k >= 1 && k < n, ErrorKind::domain, "synth: need 1 <= k < n");
    detail::require(p >= 1 && p <= n, ErrorKind::budget, "synth: need 1 <= p <= n");
    detail::require(trials >= 1, ErrorKind::range, "synth: trials must be positive");
    solver_cfg.validate();
  }
};

struct SynthTrial {
  std::uint64_t seed = 0;
  bool support_recovered = false;
  double rel_err_l2 = 0.0;
  int iterations = 0;
  bool converged = false;
  std::size_t nnz = 0;
};

struct SynthReport {
  SynthConfig config;
  std::vector<SynthTrial> trials;
  std::size_t successes = 0;
  double success_rate = 0.0;
  double mean_rel_err_success = 0.0;  // NaN when no trial succeeded
  double wall_ms = 0.0;

  bool all_converged() const {
    return std::all_of(trials.begin(), trials.end(), [](const SynthTrial& t) { return t.converged; });
  }
};

/// A k-sparse coefficient vector with +-1 spikes at distinct random positions.
inline SparseCoeffs sparse_spikes(std::size_t n, std::size_t k, std::uint64_t seed) {
  const std::vector<std::size_t> support = sample_indices_exact(n, k, derive_seed(seed, 1));
  Xoshiro256 signs(derive_seed(seed, 2));
  SparseCoeffs s = SparseCoeffs::Zero(static_cast<Eigen::Index>(n));
  for (const std::size_t i : support) {
    s[static_cast<Eigen::Index>(i)] = (signs() >> 63) != 0 ? 1.0 : -1.0;
  }
  return s;
}

inline std::vector<std::size_t> support_of(const Vector& s, double threshold) {
  std::vector<std::size_t> out;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (std::abs(s[i]) > threshold) out.push_back(static_cast<std::size_t>(i));
  }
  return out;
}

inline SynthTrial run_synth_trial(const SynthConfig& cfg, std::uint64_t trial_seed) {
  const SparseCoeffs truth = sparse_spikes(cfg.n, cfg.k, trial_seed);
  const DctPlan plan(cfg.n);
  const Signal x = plan.inverse(truth);
  const SampleSet samples =
      measure(x, sample_indices_exact(cfg.n, cfg.p, derive_seed(trial_seed, 3)));
  const SolveResult result = solve_coefficients(samples, cfg.solver_cfg, cfg.solver);

  SynthTrial trial;
  trial.seed = trial_seed;
  trial.support_recovered = support_of(result.coeffs, cfg.support_threshold) ==
                            support_of(truth, cfg.support_threshold);
  trial.rel_err_l2 = relative_error(plan.inverse(result.coeffs), x);
  trial.iterations = result.iterations;
  trial.converged = result.converged;
  trial.nnz = result.nnz;
  return trial;
}

/// Trial t draws its spikes and sample positions from derive_seed(seed, t).
inline SynthReport run_synth(const SynthConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  cfg.validate();
  SynthReport report;
  report.config = cfg;
  double err_sum = 0.0;
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    SynthTrial trial = run_synth_trial(cfg, derive_seed(cfg.seed, t));
    if (trial.support_recovered) {
      ++report.successes;
      err_sum += trial.rel_err_l2;
    }
    report.trials.push_back(trial);
  }
  report.success_rate = static_cast<double>(report.successes) / static_cast<double>(cfg.trials);
  report.mean_rel_err_success =
      report.successes > 0 ? err_sum / static_cast<double>(report.successes) : std::nan("");
  report.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace csense

#endif  // CSENSE_SYNTH_HPP
