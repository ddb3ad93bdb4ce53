#ifndef CSENSE_TYPES_HPP
#define CSENSE_TYPES_HPP

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "csense/error.hpp"

namespace csense {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Sample-domain vector (pixel intensities, synthetic signal values).
using Signal = Vector;
/// Transform-domain coefficients; expected to be mostly near zero.
using SparseCoeffs = Vector;

namespace detail {

inline void require_finite(const Vector& v, const std::string& what) {
  require(v.size() >= 1, ErrorKind::dimension, what + " must be nonempty");
  require(v.allFinite(), ErrorKind::range, what + " must have finite entries");
}

}  // namespace detail
}  // namespace csense

#endif  // CSENSE_TYPES_HPP
