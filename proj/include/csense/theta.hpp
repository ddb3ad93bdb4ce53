#ifndef CSENSE_THETA_HPP
#define CSENSE_THETA_HPP

#include <algorithm>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "csense/dct.hpp"
#include "csense/error.hpp"
#include "csense/types.hpp"

namespace csense {

namespace detail {

inline void require_sorted_indices(const std::vector<std::size_t>& indices, std::size_t n) {
  require(!indices.empty(), ErrorKind::dimension, "index set must be nonempty");
  require(indices.size() <= n, ErrorKind::dimension, "more indices than the ambient dimension");
  for (std::size_t j = 0; j < indices.size(); ++j) {
    require(indices[j] < n, ErrorKind::dimension,
            "index " + std::to_string(indices[j]) + " out of range for n = " + std::to_string(n));
    require(j == 0 || indices[j - 1] < indices[j], ErrorKind::dimension,
            "indices must be strictly increasing");
  }
}

}  // namespace detail

/// Matrix-free Theta = C Psi: synthesize with the inverse DCT, then keep the
/// sampled rows. The adjoint scatters into a zero vector and analyzes with
/// the forward DCT, which is exact because Psi is orthogonal.
///
/// Copies share one immutable DCT plan.
class ThetaOperator {
 public:
  ThetaOperator(std::size_t n, std::vector<std::size_t> indices)
      : n_(n), indices_(std::move(indices)) {
    detail::require(n >= 1, ErrorKind::dimension, "ThetaOperator: n must be at least 1");
    detail::require_sorted_indices(indices_, n_);
    plan_ = std::make_shared<const DctPlan>(n_);
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t rows() const noexcept { return indices_.size(); }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }
  const DctPlan& plan() const noexcept { return *plan_; }

  Vector apply(const SparseCoeffs& s) const {
    detail::require(static_cast<std::size_t>(s.size()) == n_, ErrorKind::dimension,
                    "theta_apply: expected length " + std::to_string(n_) + ", got " +
                        std::to_string(s.size()));
    const Signal x = plan_->inverse(s);
    Vector out(static_cast<Eigen::Index>(indices_.size()));
    for (std::size_t j = 0; j < indices_.size(); ++j) {
      out[static_cast<Eigen::Index>(j)] = x[static_cast<Eigen::Index>(indices_[j])];
    }
    return out;
  }

  SparseCoeffs adjoint(const Vector& y) const {
    detail::require(static_cast<std::size_t>(y.size()) == indices_.size(), ErrorKind::dimension,
                    "theta_adjoint: expected length " + std::to_string(indices_.size()) +
                        ", got " + std::to_string(y.size()));
    Signal z = Signal::Zero(static_cast<Eigen::Index>(n_));
    for (std::size_t j = 0; j < indices_.size(); ++j) {
      z[static_cast<Eigen::Index>(indices_[j])] = y[static_cast<Eigen::Index>(j)];
    }
    return plan_->forward(z);
  }

  /// Column j of Theta, evaluated from the cosine formula in O(p).
  Vector column(std::size_t j) const {
    Vector col(static_cast<Eigen::Index>(indices_.size()));
    for (std::size_t r = 0; r < indices_.size(); ++r) {
      col[static_cast<Eigen::Index>(r)] = psi_entry(n_, indices_[r], j);
    }
    return col;
  }

  /// Explicit p x n matrix. Subject to the same cap as dense_psi.
  Matrix dense() const {
    if (n_ > kDenseOracleCap) {
      throw Error(ErrorKind::size, "dense Theta refused: n = " + std::to_string(n_) +
                                       " exceeds the dense cap of " +
                                       std::to_string(kDenseOracleCap));
    }
    Matrix theta(static_cast<Eigen::Index>(indices_.size()), static_cast<Eigen::Index>(n_));
    for (std::size_t r = 0; r < indices_.size(); ++r) {
      for (std::size_t c = 0; c < n_; ++c) {
        theta(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            psi_entry(n_, indices_[r], c);
      }
    }
    return theta;
  }

  /// Bytes of operator state (index list plus transform tables).
  std::size_t state_bytes() const noexcept {
    return indices_.size() * sizeof(std::size_t) + plan_->state_bytes();
  }

 private:
  std::size_t n_;
  std::vector<std::size_t> indices_;
  std::shared_ptr<const DctPlan> plan_;
};

inline Vector theta_apply(const ThetaOperator& op, const SparseCoeffs& s) { return op.apply(s); }

inline SparseCoeffs theta_adjoint(const ThetaOperator& op, const Vector& y) {
  return op.adjoint(y);
}

}  // namespace csense

#endif  // CSENSE_THETA_HPP
