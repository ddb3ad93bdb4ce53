#ifndef CSENSE_OPTIMIZE_LBFGS_HPP
#define CSENSE_OPTIMIZE_LBFGS_HPP

#include <cmath>
#include <concepts>
#include <cstddef>
#include <deque>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "csense/error.hpp"
#include "csense/optimize/common.hpp"
#include "csense/types.hpp"

namespace csense {

/// Objective with fused gradient: returns f(x) and writes grad f(x) into the
/// second argument (resized by the callee if needed).
template <class F>
concept DifferentiableObjective = requires(F f, const Vector& x, Vector& g) {
  { f(x, g) } -> std::convertible_to<double>;
};

/// Bundles separate value and gradient callables into one objective.
template <class Value, class Gradient>
struct SplitObjective {
  Value value;
  Gradient gradient;

  double operator()(const Vector& x, Vector& g) const {
    g = gradient(x);
    return value(x);
  }
};

template <class Value, class Gradient>
SplitObjective(Value, Gradient) -> SplitObjective<Value, Gradient>;

/// History of the last m (dx, dy) pairs for the L-BFGS inverse-Hessian
/// approximation. Pairs that fail the curvature test are dropped on insert.
class LbfgsMemory {
 public:
  struct Pair {
    Vector dx;
    Vector dy;
    double rho;  // 1 / (dy^T dx)
  };

  explicit LbfgsMemory(std::size_t capacity) : capacity_(capacity) {
    detail::require(capacity >= 1, ErrorKind::range, "L-BFGS memory must hold at least one pair");
  }

  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  bool empty() const noexcept { return pairs_.empty(); }
  const std::deque<Pair>& pairs() const noexcept { return pairs_; }
  void clear() { pairs_.clear(); }

  /// Stores the pair when dy^T dx > 1e-12 |dy| |dx|; returns whether it was kept.
  bool push(Vector dx, Vector dy) {
    const double curvature = dy.dot(dx);
    if (!(curvature > 1e-12 * dy.norm() * dx.norm())) return false;
    if (pairs_.size() == capacity_) pairs_.pop_front();
    pairs_.push_back(Pair{std::move(dx), std::move(dy), 1.0 / curvature});
    return true;
  }

  /// Initial inverse-Hessian scale (dx^T dy)/(dy^T dy) from the newest pair.
  double gamma() const {
    if (pairs_.empty()) return 1.0;
    const Pair& last = pairs_.back();
    return 1.0 / (last.rho * last.dy.squaredNorm());
  }

  /// -H^{-1} g by the two-loop recursion. Empty memory gives -g.
  Vector direction(const Vector& grad) const {
    Vector q = grad;
    std::vector<double> alpha(pairs_.size());
    for (std::size_t k = pairs_.size(); k-- > 0;) {
      const Pair& p = pairs_[k];
      alpha[k] = p.rho * p.dx.dot(q);
      q -= alpha[k] * p.dy;
    }
    q *= gamma();
    for (std::size_t k = 0; k < pairs_.size(); ++k) {
      const Pair& p = pairs_[k];
      const double beta = p.rho * p.dy.dot(q);
      q += (alpha[k] - beta) * p.dx;
    }
    return -q;
  }

 private:
  std::size_t capacity_;
  std::deque<Pair> pairs_;
};

inline Vector lbfgs_direction(const LbfgsMemory& mem, const Vector& grad) {
  detail::require(grad.allFinite(), ErrorKind::range, "lbfgs_direction: gradient must be finite");
  return mem.direction(grad);
}

namespace detail {

/// Relative objective decrease between consecutive iterates.
inline double relative_decrease(double previous, double current) {
  const double scale = std::max(std::abs(previous), std::numeric_limits<double>::min());
  return (previous - current) / scale;
}

/// Tracks the "relative decrease below tol on two consecutive iterations" rule.
class StallCounter {
 public:
  explicit StallCounter(double tol) : tol_(tol) {}
  bool update(double previous, double current) {
    streak_ = relative_decrease(previous, current) < tol_ ? streak_ + 1 : 0;
    return streak_ >= 2;
  }

 private:
  double tol_;
  int streak_ = 0;
};

}  // namespace detail

/// Minimizes a smooth objective with L-BFGS directions and a backtracking
/// Armijo line search starting from a unit step.
template <DifferentiableObjective F>
SolveResult lbfgs_minimize(F&& objective, const Vector& x0, const SolverConfig& cfg) {
  cfg.validate();
  detail::require_finite(x0, "lbfgs_minimize: starting point");

  LbfgsMemory mem(static_cast<std::size_t>(cfg.memory));
  Vector x = x0;
  Vector g;
  double f = objective(x, g);
  detail::require(std::isfinite(f), ErrorKind::range, "lbfgs_minimize: objective is not finite at x0");

  SolveResult result;
  result.objective_history.push_back(f);
  detail::StallCounter stall(cfg.tol);

  Vector x_new;
  Vector g_new;
  for (int it = 1; it <= cfg.max_iters; ++it) {
    if (g.lpNorm<Eigen::Infinity>() < cfg.tol) {
      result.converged = true;
      break;
    }
    Vector d = mem.direction(g);
    double slope = g.dot(d);
    if (!(slope < 0.0)) {
      mem.clear();
      d = -g;
      slope = -g.squaredNorm();
    }

    double step = 1.0;
    double f_new = 0.0;
    bool accepted = false;
    for (int shrink = 0; shrink <= cfg.ls_max_shrinks; ++shrink) {
      x_new = x + step * d;
      f_new = objective(x_new, g_new);
      if (std::isfinite(f_new) && f_new <= f + cfg.ls_c1 * step * slope) {
        accepted = true;
        break;
      }
      step *= cfg.ls_shrink;
    }
    if (!accepted) {
      throw Error(ErrorKind::line_search, "lbfgs_minimize: no sufficient decrease after " +
                                              std::to_string(cfg.ls_max_shrinks) +
                                              " step reductions at iteration " + std::to_string(it));
    }

    // A rejected pair means the stored curvature no longer describes this
    // region; stale pairs would keep producing the same poor direction.
    if (!mem.push(x_new - x, g_new - g)) mem.clear();
    const double f_prev = f;
    x.swap(x_new);
    g.swap(g_new);
    f = f_new;
    result.objective_history.push_back(f);
    result.iterations = it;
    if (stall.update(f_prev, f) || g.lpNorm<Eigen::Infinity>() < cfg.tol) {
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
SolveResult lbfgs_minimize(Value value, Gradient gradient, const Vector& x0,
                           const SolverConfig& cfg) {
  return lbfgs_minimize(SplitObjective{std::move(value), std::move(gradient)}, x0, cfg);
}

}  // namespace csense

#endif  // CSENSE_OPTIMIZE_LBFGS_HPP
