#ifndef CSENSE_OPTIMIZE_BFGS_HPP
#define CSENSE_OPTIMIZE_BFGS_HPP

#include "csense/error.hpp"
#include "csense/types.hpp"

namespace csense {

/// Dense BFGS Hessian update
///   H' = H + y y^T / (y^T dx) - H dx dx^T H / (dx^T H dx).
/// H' satisfies the secant condition H' dx = y and stays SPD when H is SPD
/// and y^T dx > 0.
inline Matrix bfgs_update(const Matrix& h, const Vector& dx, const Vector& y) {
  detail::require(h.rows() == h.cols() && h.rows() == dx.size() && dx.size() == y.size(),
                  ErrorKind::dimension, "bfgs_update: dimension mismatch");
  const double curvature = y.dot(dx);
  if (!(curvature > 0.0)) {
    throw Error(ErrorKind::curvature, "bfgs_update: y^T dx must be positive; skip this pair");
  }
  const Vector hdx = h * dx;
  const double dxhdx = dx.dot(hdx);
  detail::require(dxhdx > 0.0, ErrorKind::curvature, "bfgs_update: H is not positive definite");
  Matrix next = h + (y * y.transpose()) / curvature - (hdx * hdx.transpose()) / dxhdx;
  // H dx dx^T H is symmetric in exact arithmetic; remove the rounding skew
  return 0.5 * (next + next.transpose());
}

}  // namespace csense

#endif  // CSENSE_OPTIMIZE_BFGS_HPP
