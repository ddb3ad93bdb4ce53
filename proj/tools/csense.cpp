// csense: compressed-sensing experiments from the command line.
//
// Exit codes: 0 success, 2 usage or validation error, 3 solver did not
// converge (outputs are still written), 4 I/O or file-format error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "csense/csense.hpp"

namespace {

using namespace csense;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitIo = 4;

struct SolveFlags {
  std::string solver = "owlqn";
  std::optional<double> lambda;
  int max_iters = 1000;
  double tol = 1e-8;
  int memory = 10;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--solver", solver, "lasso (coordinate descent) or owlqn")
        ->check(CLI::IsMember({"lasso", "owlqn"}))
        ->capture_default_str();
    cmd.add_option("--lambda", lambda, "l1 weight; default p * 1e-4 (sklearn alpha = 1e-4)");
    cmd.add_option("--max-iters", max_iters, "iteration cap per continuation stage")
        ->capture_default_str();
    cmd.add_option("--tol", tol, "stopping tolerance")->capture_default_str();
    cmd.add_option("--memory", memory, "L-BFGS history length")->capture_default_str();
  }

  Solver kind() const { return solver == "lasso" ? Solver::lasso_cd : Solver::owlqn; }

  SolverConfig config(double default_lambda) const {
    SolverConfig cfg;
    cfg.lambda = lambda.value_or(default_lambda);
    cfg.max_iters = max_iters;
    cfg.tol = tol;
    cfg.memory = memory;
    cfg.validate();
    return cfg;
  }

  // Checks that do not depend on the instance size.
  void validate() const { config(0.0); }
};

void emit_json(const json& doc, const std::string& path) {
  const std::string text = doc.dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

void require_fraction(double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw Error(ErrorKind::range, "--fraction must lie in (0, 1]");
  }
}

// ---- sample ---------------------------------------------------------------

struct SampleCmd {
  std::string input;
  std::string output;
  std::string report;
  double fraction = 0.2;
  std::uint64_t seed = 0;

  int run() const {
    require_fraction(fraction);
    const ImageBuffer img = load_image(input);
    const auto indices = sample_indices(img.plane_size(), fraction, seed);
    std::vector<SampleSet> channels;
    for (std::size_t c = 0; c < img.channels; ++c) channels.push_back(measure(img.channel(c), indices));
    emit_json(sample_set_to_json(channels), report);
    if (!output.empty()) save_image(zero_filled(img, indices), output);
    std::cerr << "sampled " << indices.size() << " of " << img.plane_size() << " pixels ("
              << img.channels << " channel" << (img.channels == 1 ? "" : "s") << ")\n";
    return kExitOk;
  }
};

// ---- reconstruct ----------------------------------------------------------

struct ReconstructCmd {
  std::string input;
  std::string samples;
  std::string output;
  std::string report;
  double fraction = 0.1;
  std::uint64_t seed = 0;
  SolveFlags solve;

  int run() const {
    require_fraction(fraction);
    solve.validate();
    const ImageBuffer img = load_image(input);
    img.validate();

    ImageBuffer out;
    ReconstructionReport rep;
    if (samples.empty()) {
      const std::size_t p = sample_count(img.plane_size(), fraction);
      const SolverConfig cfg = solve.config(lambda_from_alpha(kDefaultAlpha, p));
      std::tie(out, rep) = reconstruct_image(img, fraction, seed, cfg, solve.kind());
    } else {
      const auto start = std::chrono::steady_clock::now();
      const std::vector<SampleSet> sets = sample_sets_from_json(read_json_file(samples));
      if (sets.front().n != img.plane_size() || sets.size() != img.channels) {
        throw Error(ErrorKind::dimension, "sample file does not match the input image shape");
      }
      const std::size_t p = sets.front().size();
      const SolverConfig cfg = solve.config(lambda_from_alpha(kDefaultAlpha, p));
      std::vector<SolveResult> results;
      std::tie(out, results) = reconstruct_from_samples(img.width, img.height, sets, cfg, solve.kind());
      rep.fraction = static_cast<double>(p) / static_cast<double>(img.plane_size());
      rep.seed = seed;
      rep.solver = solve.kind();
      rep.lambda = cfg.lambda;
      for (const auto& r : results) rep.per_channel.push_back(summarize(r));
      rep.psnr_db = psnr(out, img);
      rep.rel_err_l2 = relative_error(out.pixels, img.pixels);
      rep.wall_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }

    if (!output.empty()) save_image(out, output);
    emit_json(report_to_json(rep), report);
    std::cerr << "psnr " << rep.psnr_db << " dB, relative l2 error " << rep.rel_err_l2 << ", "
              << rep.wall_ms << " ms\n";
    if (!rep.converged()) {
      std::cerr << "warning: solver hit the iteration cap before converging\n";
      return kExitNoConvergence;
    }
    return kExitOk;
  }
};

// ---- synth ----------------------------------------------------------------

struct SynthCmd {
  std::size_t n = 256;
  std::size_t k = 4;
  std::optional<std::size_t> p;
  std::optional<double> fraction;
  double k1 = 1.0;
  std::size_t trials = 20;
  std::uint64_t seed = 0;
  std::string report;
  SolveFlags solve;

  int run() const {
    solve.validate();
    if (k == 0 || k >= n) {
      throw Error(ErrorKind::domain, "need 1 <= k < n (got k = " + std::to_string(k) +
                                         ", n = " + std::to_string(n) + ")");
    }
    if (trials == 0) throw Error(ErrorKind::range, "--trials must be positive");

    SynthConfig cfg;
    cfg.n = n;
    cfg.k = k;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.solver = solve.kind();
    if (p) {
      cfg.p = *p;
    } else if (fraction) {
      require_fraction(*fraction);
      cfg.p = sample_count(n, *fraction);
    } else {
      cfg.p = estimate_measurements(k, n, k1).measurements;
      cfg.k1 = k1;
    }
    cfg.solver_cfg = solve.config(1e-6);
    cfg.validate();

    const SynthReport rep = run_synth(cfg);
    emit_json(synth_report_to_json(rep), report);
    std::cerr << "n " << n << ", k " << k << ", p " << cfg.p << ": recovered support in "
              << rep.successes << " of " << trials << " trials\n";
    return kExitOk;
  }
};

// ---- compare --------------------------------------------------------------

struct CompareCmd {
  std::string input;
  std::size_t n = 1024;
  std::size_t k = 8;
  double fraction = 0.2;
  std::uint64_t seed = 0;
  std::string report;
  SolveFlags solve;

  int run() const {
    require_fraction(fraction);
    solve.validate();
    SampleSet samples;
    std::string instance;
    if (!input.empty()) {
      const ImageBuffer img = load_image(input);
      img.validate();
      samples = measure(img.channel(0), sample_indices(img.plane_size(), fraction, seed));
      instance = "image";
    } else {
      if (k == 0 || k >= n) throw Error(ErrorKind::domain, "need 1 <= k < n");
      const Signal x = DctPlan(n).inverse(sparse_spikes(n, k, seed));
      samples = measure(x, sample_indices(n, fraction, derive_seed(seed, 3)));
      instance = "synth";
    }
    const SolverConfig cfg = solve.config(lambda_from_alpha(kDefaultAlpha, samples.size()));
    const SolverComparison cmp = compare_solvers(samples, cfg);

    json doc = comparison_to_json(cmp);
    doc["instance"] = instance;
    doc["fraction"] = fraction;
    doc["seed"] = seed;
    emit_json(doc, report);
    if (!cmp.lasso.ran) std::cerr << "lasso_cd skipped: " << cmp.lasso.refusal << "\n";
    std::cerr << "owlqn objective " << cmp.owlqn.objective << " in " << cmp.owlqn.wall_ms << " ms";
    if (cmp.lasso.ran) {
      std::cerr << "; lasso_cd objective " << cmp.lasso.objective << " in " << cmp.lasso.wall_ms
                << " ms; relative difference " << cmp.objective_rel_diff;
    }
    std::cerr << "\n";
    return kExitOk;
  }
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::io:
    case ErrorKind::format:
    case ErrorKind::truncation:
    case ErrorKind::unsupported:
      return kExitIo;
    case ErrorKind::iteration_limit:
    case ErrorKind::line_search:
      return kExitNoConvergence;
    default:
      return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compressed sensing over a DCT basis: sampling, sparse reconstruction, experiments"};
  app.require_subcommand(1);

  SampleCmd sample;
  auto* sample_cmd = app.add_subcommand("sample", "draw a random pixel sample set and a masked preview");
  sample_cmd->add_option("--input", sample.input, "P5/P6 image")->required();
  sample_cmd->add_option("--output", sample.output, "masked preview image (P5/P6)");
  sample_cmd->add_option("--report", sample.report, "sample set JSON (default: stdout)");
  sample_cmd->add_option("--fraction", sample.fraction, "fraction of pixels to keep")->capture_default_str();
  sample_cmd->add_option("--seed", sample.seed, "sampling seed")->capture_default_str();

  ReconstructCmd recon;
  auto* recon_cmd = app.add_subcommand("reconstruct", "reconstruct an image from random pixel samples");
  recon_cmd->add_option("--input", recon.input, "ground-truth P5/P6 image")->required();
  recon_cmd->add_option("--samples", recon.samples, "sample set JSON from `sample` (optional)");
  recon_cmd->add_option("--output", recon.output, "reconstructed image (P5/P6)");
  recon_cmd->add_option("--report", recon.report, "report JSON (default: stdout)");
  recon_cmd->add_option("--fraction", recon.fraction, "fraction of pixels to sample")->capture_default_str();
  recon_cmd->add_option("--seed", recon.seed, "sampling seed")->capture_default_str();
  recon.solve.add_to(*recon_cmd);

  SynthCmd synth;
  auto* synth_cmd = app.add_subcommand("synth", "sparse-recovery success rate on synthetic signals");
  synth_cmd->add_option("--n", synth.n, "signal length")->capture_default_str();
  synth_cmd->add_option("--k", synth.k, "nonzero DCT coefficients")->capture_default_str();
  synth_cmd->add_option("--p", synth.p, "measurements per trial (overrides --fraction and --k1)");
  synth_cmd->add_option("--fraction", synth.fraction, "measurements as a fraction of n");
  synth_cmd->add_option("--k1", synth.k1, "budget constant in p = k1 K ln(n/K)")->capture_default_str();
  synth_cmd->add_option("--trials", synth.trials, "number of seeded trials")->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "base seed")->capture_default_str();
  synth_cmd->add_option("--report", synth.report, "report JSON (default: stdout)");
  synth.solve.add_to(*synth_cmd);
  synth_cmd->get_option("--lambda")->description("l1 weight (default 1e-6)");

  CompareCmd compare;
  auto* compare_cmd = app.add_subcommand("compare", "run both solvers on one instance");
  compare_cmd->add_option("--input", compare.input, "P5/P6 image (channel 0 is used); omit for synthetic");
  compare_cmd->add_option("--n", compare.n, "synthetic signal length")->capture_default_str();
  compare_cmd->add_option("--k", compare.k, "synthetic sparsity")->capture_default_str();
  compare_cmd->add_option("--fraction", compare.fraction, "fraction of entries sampled")->capture_default_str();
  compare_cmd->add_option("--seed", compare.seed, "seed")->capture_default_str();
  compare_cmd->add_option("--report", compare.report, "report JSON (default: stdout)");
  compare.solve.add_to(*compare_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sample_cmd) return sample.run();
    if (*recon_cmd) return recon.run();
    if (*synth_cmd) return synth.run();
    if (*compare_cmd) return compare.run();
  } catch (const Error& e) {
    std::cerr << "csense: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "csense: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
