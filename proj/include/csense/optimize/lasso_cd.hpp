#ifndef CSENSE_OPTIMIZE_LASSO_CD_HPP
#define CSENSE_OPTIMIZE_LASSO_CD_HPP

#include <algorithm>
#include <cmath>
#include <concepts>
#include <string>
#include <vector>

#include "csense/error.hpp"
#include "csense/optimize/common.hpp"
#include "csense/theta.hpp"
#include "csense/types.hpp"

namespace csense {

/// Column access needed by coordinate descent.
template <class D>
concept CoordinateDesign = requires(const D& d, Eigen::Index j) {
  { d.rows() } -> std::convertible_to<Eigen::Index>;
  { d.cols() } -> std::convertible_to<Eigen::Index>;
  { d.column_sq_norm(j) } -> std::convertible_to<double>;
  d.column(j);
};

class DenseDesign {
 public:
  explicit DenseDesign(const Matrix& m) : m_(&m), sq_norms_(m.colwise().squaredNorm()) {}
  Eigen::Index rows() const { return m_->rows(); }
  Eigen::Index cols() const { return m_->cols(); }
  double column_sq_norm(Eigen::Index j) const { return sq_norms_[j]; }
  auto column(Eigen::Index j) const { return m_->col(j); }

 private:
  const Matrix* m_;
  Eigen::RowVectorXd sq_norms_;
};

/// Matrix-free design over a ThetaOperator: columns are evaluated from the
/// cosine formula on demand; only their squared norms are cached.
class ThetaColumns {
 public:
  explicit ThetaColumns(const ThetaOperator& op) : op_(&op), sq_norms_(static_cast<Eigen::Index>(op.n())) {
    for (std::size_t j = 0; j < op.n(); ++j) {
      sq_norms_[static_cast<Eigen::Index>(j)] = op.column(j).squaredNorm();
    }
  }
  Eigen::Index rows() const { return static_cast<Eigen::Index>(op_->rows()); }
  Eigen::Index cols() const { return static_cast<Eigen::Index>(op_->n()); }
  double column_sq_norm(Eigen::Index j) const { return sq_norms_[j]; }
  Vector column(Eigen::Index j) const { return op_->column(static_cast<std::size_t>(j)); }

 private:
  const ThetaOperator* op_;
  Vector sq_norms_;
};

/// Cyclic coordinate descent for 0.5 |Theta s - y|^2 + lambda |s|_1.
///
/// Each coordinate is set to its exact minimizer
/// soft(theta_j^T r_j, lambda) / |theta_j|^2, r_j being the residual with
/// coordinate j removed. One iteration is one pass, either over all columns
/// or over the current nonzeros only. Stops when a full pass changes no
/// coordinate by more than cfg.tol.
template <CoordinateDesign D>
SolveResult lasso_cd(const D& design, const Vector& y, const SolverConfig& cfg,
                     const Vector* warm_start = nullptr) {
  cfg.validate();
  const Eigen::Index p = design.rows();
  const Eigen::Index n = design.cols();
  detail::require(y.size() == p, ErrorKind::dimension, "lasso_cd: measurement length mismatch");
  for (Eigen::Index j = 0; j < n; ++j) {
    if (!(design.column_sq_norm(j) > 1e-20)) {
      throw Error(ErrorKind::degenerate_column,
                  "lasso_cd: column " + std::to_string(j) + " of the design is zero");
    }
  }

  Vector s = warm_start != nullptr ? *warm_start : Vector::Zero(n);
  detail::require(s.size() == n, ErrorKind::dimension, "lasso_cd: warm start length mismatch");
  Vector r = y;  // y - Theta s
  for (Eigen::Index j = 0; j < n; ++j) {
    if (s[j] != 0.0) r -= s[j] * design.column(j);
  }

  const double lambda = cfg.lambda;
  // One coordinate update; returns |change|.
  auto update = [&](Eigen::Index j) {
    const auto col = design.column(j);
    const double norm2 = design.column_sq_norm(j);
    const double old = s[j];
    const double rho = col.dot(r) + norm2 * old;
    const double delta = soft_threshold(rho, lambda) / norm2 - old;
    if (delta == 0.0) return 0.0;
    r -= delta * col;
    s[j] = old + delta;
    return std::abs(delta);
  };
  auto objective = [&] { return 0.5 * r.squaredNorm() + lambda * s.lpNorm<1>(); };

  // Full passes alternate with passes restricted to the current support;
  // convergence is only declared after a full pass moves nothing.
  SolveResult result;
  result.objective_history.push_back(objective());
  std::vector<Eigen::Index> active;
  bool full_pass = true;
  for (int pass = 1; pass <= cfg.max_iters; ++pass) {
    double max_change = 0.0;
    if (full_pass) {
      for (Eigen::Index j = 0; j < n; ++j) max_change = std::max(max_change, update(j));
      active.clear();
      for (Eigen::Index j = 0; j < n; ++j) {
        if (s[j] != 0.0) active.push_back(j);
      }
    } else {
      for (const Eigen::Index j : active) max_change = std::max(max_change, update(j));
    }
    result.objective_history.push_back(objective());
    result.iterations = pass;
    if (max_change < cfg.tol) {
      if (full_pass) {
        result.converged = true;
        break;
      }
      full_pass = true;
    } else {
      full_pass = false;
    }
  }

  result.nnz = count_nnz(s);
  result.coeffs = std::move(s);
  return result;
}

inline SolveResult lasso_cd(const Matrix& theta, const Vector& y, const SolverConfig& cfg) {
  return lasso_cd(DenseDesign(theta), y, cfg);
}

inline SolveResult lasso_cd(const ThetaOperator& theta, const Vector& y, const SolverConfig& cfg) {
  return lasso_cd(ThetaColumns(theta), y, cfg);
}

}  // namespace csense

#endif  // CSENSE_OPTIMIZE_LASSO_CD_HPP
