#ifndef CSENSE_OPTIMIZE_LEAST_SQUARES_HPP
#define CSENSE_OPTIMIZE_LEAST_SQUARES_HPP

#include <concepts>
#include <utility>

#include "csense/error.hpp"
#include "csense/types.hpp"

namespace csense {

template <class Op>
concept LinearOperator = requires(const Op& op, const Vector& v) {
  { op.apply(v) } -> std::convertible_to<Vector>;
  { op.adjoint(v) } -> std::convertible_to<Vector>;
};

/// Explicit matrix viewed as a LinearOperator. Holds a pointer, so the matrix
/// must outlive it.
class DenseOperator {
 public:
  explicit DenseOperator(const Matrix& m) : m_(&m) {}
  Vector apply(const Vector& v) const { return (*m_) * v; }
  Vector adjoint(const Vector& v) const { return m_->transpose() * v; }
  const Matrix& matrix() const noexcept { return *m_; }

 private:
  const Matrix* m_;
};

/// g(s) = 0.5 |A s - y|^2 with gradient A^T (A s - y).
template <LinearOperator Op>
class LeastSquaresLoss {
 public:
  LeastSquaresLoss(Op op, Vector y) : op_(std::move(op)), y_(std::move(y)) {}

  double operator()(const Vector& s, Vector& grad) const {
    const Vector r = op_.apply(s) - y_;
    detail::require(r.size() == y_.size(), ErrorKind::dimension,
                    "least squares: operator output does not match measurements");
    grad = op_.adjoint(r);
    return 0.5 * r.squaredNorm();
  }

  double value(const Vector& s) const { return 0.5 * (op_.apply(s) - y_).squaredNorm(); }
  Vector gradient(const Vector& s) const { return op_.adjoint(op_.apply(s) - y_); }

  /// 0.5 |A s - y|^2 + lambda |s|_1
  double lasso_objective(const Vector& s, double lambda) const {
    return value(s) + lambda * s.lpNorm<1>();
  }

  const Op& op() const noexcept { return op_; }
  const Vector& measurements() const noexcept { return y_; }

 private:
  Op op_;
  Vector y_;
};

}  // namespace csense

#endif  // CSENSE_OPTIMIZE_LEAST_SQUARES_HPP
