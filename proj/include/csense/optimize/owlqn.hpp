#ifndef CSENSE_OPTIMIZE_OWLQN_HPP
#define CSENSE_OPTIMIZE_OWLQN_HPP

#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "csense/error.hpp"
#include "csense/optimize/common.hpp"
#include "csense/optimize/lbfgs.hpp"
#include "csense/types.hpp"

namespace csense {

/// Minimum-norm subgradient of g(s) + lambda |s|_1 built from one-sided
/// derivatives. At s_i = 0 it is nonzero only when one side descends.
inline Vector pseudo_gradient(const Vector& s, const Vector& grad_g, double lambda) {
  detail::require(s.size() == grad_g.size(), ErrorKind::dimension,
                  "pseudo_gradient: dimension mismatch");
  Vector pg(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double gi = grad_g[i];
    if (s[i] > 0.0) {
      pg[i] = gi + lambda;
    } else if (s[i] < 0.0) {
      pg[i] = gi - lambda;
    } else if (gi + lambda < 0.0) {
      pg[i] = gi + lambda;
    } else if (gi - lambda > 0.0) {
      pg[i] = gi - lambda;
    } else {
      pg[i] = 0.0;
    }
  }
  return pg;
}

/// Infinity norm of the pseudo-gradient; zero exactly at a minimizer of
/// g + lambda |.|_1, so it serves as the KKT residual.
inline double kkt_residual(const Vector& s, const Vector& grad_g, double lambda) {
  return pseudo_gradient(s, grad_g, lambda).lpNorm<Eigen::Infinity>();
}

/// Called with every line-search trial point (already projected) and the
/// orthant it was projected onto.
using OrthantObserver = std::function<void(const Vector& trial, const Vector& orthant)>;

/// Orthant-wise limited-memory quasi-Newton for g(s) + lambda |s|_1.
///
/// Each iteration picks the orthant given by sign(s_i), or by sign(-pg_i)
/// where s_i = 0, builds an L-BFGS direction from the pseudo-gradient using
/// curvature pairs of the smooth part only, drops direction components that
/// disagree in sign with -pg, and backtracks along the projected path where
/// any coordinate leaving the orthant is clamped to zero.
template <DifferentiableObjective F>
SolveResult owlqn_minimize(F&& loss, const Vector& x0, const SolverConfig& cfg,
                           const OrthantObserver& observer = {}) {
  cfg.validate();
  detail::require_finite(x0, "owlqn_minimize: starting point");
  const double lambda = cfg.lambda;

  LbfgsMemory mem(static_cast<std::size_t>(cfg.memory));
  Vector x = x0;
  Vector g;
  double f = loss(x, g) + lambda * x.lpNorm<1>();
  detail::require(std::isfinite(f), ErrorKind::range, "owlqn_minimize: objective is not finite at x0");

  SolveResult result;
  result.objective_history.push_back(f);
  detail::StallCounter stall(cfg.tol);

  const Eigen::Index n = x.size();
  Vector orthant(n);
  Vector trial;
  Vector g_new;
  Vector pg = pseudo_gradient(x, g, lambda);
  for (int it = 1; it <= cfg.max_iters; ++it) {
    if (pg.lpNorm<Eigen::Infinity>() < cfg.tol) {
      result.converged = true;
      break;
    }

    Vector d = mem.direction(pg);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (d[i] * pg[i] >= 0.0) d[i] = 0.0;
    }
    if (!(pg.dot(d) < 0.0)) {
      mem.clear();
      d = -pg;
    }

    for (Eigen::Index i = 0; i < n; ++i) {
      if (x[i] > 0.0) {
        orthant[i] = 1.0;
      } else if (x[i] < 0.0) {
        orthant[i] = -1.0;
      } else {
        orthant[i] = pg[i] < 0.0 ? 1.0 : (pg[i] > 0.0 ? -1.0 : 0.0);
      }
    }

    double step = 1.0;
    double f_new = 0.0;
    bool accepted = false;
    for (int shrink = 0; shrink <= cfg.ls_max_shrinks; ++shrink) {
      trial = x + step * d;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (trial[i] * orthant[i] <= 0.0) trial[i] = 0.0;
      }
      if (observer) observer(trial, orthant);
      f_new = loss(trial, g_new) + lambda * trial.lpNorm<1>();
      if (std::isfinite(f_new) && f_new <= f + cfg.ls_c1 * pg.dot(trial - x)) {
        accepted = true;
        break;
      }
      step *= cfg.ls_shrink;
    }
    if (!accepted) {
      throw Error(ErrorKind::line_search, "owlqn_minimize: no sufficient decrease after " +
                                              std::to_string(cfg.ls_max_shrinks) +
                                              " step reductions at iteration " + std::to_string(it));
    }

    // A rejected pair means the stored curvature no longer describes this
    // region; stale pairs would keep producing the same poor direction.
    if (!mem.push(trial - x, g_new - g)) mem.clear();
    const double f_prev = f;
    x.swap(trial);
    g.swap(g_new);
    f = f_new;
    pg = pseudo_gradient(x, g, lambda);
    result.objective_history.push_back(f);
    result.iterations = it;
    if (stall.update(f_prev, f) || pg.lpNorm<Eigen::Infinity>() < cfg.tol) {
      result.converged = true;
      break;
    }
  }

  result.nnz = count_nnz(x);
  result.coeffs = std::move(x);
  return result;
}

template <class Value, class Gradient>
  requires std::invocable<Value, const Vector&> && std::invocable<Gradient, const Vector&>
SolveResult owlqn_minimize(Value value, Gradient gradient, const Vector& x0,
                           const SolverConfig& cfg, const OrthantObserver& observer = {}) {
  return owlqn_minimize(SplitObjective{std::move(value), std::move(gradient)}, x0, cfg, observer);
}

}  // namespace csense

#endif  // CSENSE_OPTIMIZE_OWLQN_HPP
