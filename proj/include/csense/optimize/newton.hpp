#ifndef CSENSE_OPTIMIZE_NEWTON_HPP
#define CSENSE_OPTIMIZE_NEWTON_HPP

#include <cmath>
#include <concepts>
#include <string>

#include "csense/error.hpp"
#include "csense/types.hpp"

namespace csense {

template <class T>
struct NewtonResult {
  T x;
  int iterations = 0;
};

/// Scalar Newton root finding, x <- x - f(x) / f'(x). Returns once |f(x)| <= tol.
template <std::invocable<double> F, std::invocable<double> DF>
NewtonResult<double> newton_root(F&& f, DF&& df, double x0, double tol, int max_iters) {
  detail::require(tol > 0.0, ErrorKind::range, "newton_root: tol must be positive");
  double x = x0;
  for (int it = 0;; ++it) {
    const double fx = f(x);
    if (std::abs(fx) <= tol) return {x, it};
    if (it == max_iters) {
      throw Error(ErrorKind::iteration_limit,
                  "newton_root: no root within " + std::to_string(max_iters) + " iterations");
    }
    const double d = df(x);
    if (std::abs(d) <= 1e-300) {
      throw Error(ErrorKind::derivative_vanishes,
                  "newton_root: derivative vanished at x = " + std::to_string(x));
    }
    x -= fx / d;
  }
}

/// Newton's method applied to f' to find a stationary point of f.
template <std::invocable<double> DF, std::invocable<double> D2F>
NewtonResult<double> newton_minimize_1d(DF&& df, D2F&& d2f, double x0, double tol,
                                        int max_iters) {
  return newton_root(std::forward<DF>(df), std::forward<D2F>(d2f), x0, tol, max_iters);
}

/// x <- x - H(x)^{-1} grad(x), with the step from a pivoted LU solve of H d = grad.
template <class Grad, class Hess>
  requires std::invocable<Grad, const Vector&> && std::invocable<Hess, const Vector&>
NewtonResult<Vector> newton_minimize_nd(Grad&& grad, Hess&& hess, const Vector& x0, double tol,
                                        int max_iters) {
  detail::require(tol > 0.0, ErrorKind::range, "newton_minimize_nd: tol must be positive");
  Vector x = x0;
  for (int it = 0;; ++it) {
    const Vector g = grad(x);
    detail::require(g.size() == x.size(), ErrorKind::dimension,
                    "newton_minimize_nd: gradient dimension mismatch");
    if (g.norm() <= tol) return {x, it};
    if (it == max_iters) {
      throw Error(ErrorKind::iteration_limit, "newton_minimize_nd: no stationary point within " +
                                                  std::to_string(max_iters) + " iterations");
    }
    const Matrix h = hess(x);
    detail::require(h.rows() == x.size() && h.cols() == x.size(), ErrorKind::dimension,
                    "newton_minimize_nd: Hessian dimension mismatch");
    Eigen::FullPivLU<Matrix> lu(h);
    if (!lu.isInvertible()) {
      throw Error(ErrorKind::linear_solve, "newton_minimize_nd: singular Hessian");
    }
    x -= lu.solve(g);
  }
}

}  // namespace csense

#endif  // CSENSE_OPTIMIZE_NEWTON_HPP
