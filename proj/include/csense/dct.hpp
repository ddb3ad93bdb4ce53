#ifndef CSENSE_DCT_HPP
#define CSENSE_DCT_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "csense/error.hpp"
#include "csense/fft.hpp"
#include "csense/types.hpp"

namespace csense {

/// Largest n for which dense_psi will materialize the n x n basis.
inline constexpr std::size_t kDenseOracleCap = 4096;

/// Orthonormal DCT-II / DCT-III pair of fixed length.
///
/// forward (analysis):  c_k = a_k sum_i x_i cos(pi (2i+1) k / 2n)
/// inverse (synthesis): x_i = sum_k a_k c_k cos(pi (2i+1) k / 2n)
/// with a_0 = sqrt(1/n) and a_k = sqrt(2/n) otherwise, so the synthesis
/// matrix Psi is orthogonal and inverse == transpose(forward).
///
/// Both directions run in O(n log n) through Makhoul's even/odd reordering
/// onto a single length-n complex FFT.
class DctPlan {
 public:
  using Complex = std::complex<double>;

  explicit DctPlan(std::size_t n) : n_(n), fft_(n), rotation_(n), scale_(n) {
    detail::require(n >= 1, ErrorKind::dimension, "DCT length must be at least 1");
    const double dn = static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
      rotation_[k] = std::polar(1.0, -std::numbers::pi * static_cast<double>(k) / (2.0 * dn));
      scale_[k] = k == 0 ? std::sqrt(1.0 / dn) : std::sqrt(2.0 / dn);
    }
  }

  std::size_t size() const noexcept { return n_; }

  SparseCoeffs forward(const Signal& x) const {
    detail::require(x.size() >= 1, ErrorKind::dimension, "dct_forward: empty input");
    detail::require(static_cast<std::size_t>(x.size()) == n_, ErrorKind::dimension,
                    "dct_forward: length does not match plan");
    std::vector<Complex> v(n_);
    const std::size_t half = (n_ + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) v[i] = x[static_cast<Eigen::Index>(2 * i)];
    for (std::size_t i = 0; i < n_ / 2; ++i) {
      v[n_ - 1 - i] = x[static_cast<Eigen::Index>(2 * i + 1)];
    }
    fft_.transform(v, false);
    SparseCoeffs c(static_cast<Eigen::Index>(n_));
    for (std::size_t k = 0; k < n_; ++k) {
      c[static_cast<Eigen::Index>(k)] = scale_[k] * (rotation_[k] * v[k]).real();
    }
    return c;
  }

  Signal inverse(const SparseCoeffs& c) const {
    detail::require(c.size() >= 1, ErrorKind::dimension, "dct_inverse: empty input");
    detail::require(static_cast<std::size_t>(c.size()) == n_, ErrorKind::dimension,
                    "dct_inverse: length does not match plan");
    // Undo the normalization to get raw DCT-II values C_k, then rebuild the
    // spectrum of the reordered sequence: V_k = conj(rot_k) (C_k - i C_{n-k}).
    std::vector<Complex> v(n_);
    auto raw = [&](std::size_t k) { return c[static_cast<Eigen::Index>(k)] / scale_[k]; };
    for (std::size_t k = 0; k < n_; ++k) {
      const double ck = raw(k);
      const double cnk = k == 0 ? 0.0 : raw(n_ - k);
      v[k] = std::conj(rotation_[k]) * Complex(ck, -cnk);
    }
    fft_.transform(v, true);
    Signal x(static_cast<Eigen::Index>(n_));
    const std::size_t half = (n_ + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) x[static_cast<Eigen::Index>(2 * i)] = v[i].real();
    for (std::size_t i = 0; i < n_ / 2; ++i) {
      x[static_cast<Eigen::Index>(2 * i + 1)] = v[n_ - 1 - i].real();
    }
    return x;
  }

  std::size_t state_bytes() const noexcept {
    return fft_.state_bytes() + rotation_.size() * sizeof(Complex) + scale_.size() * sizeof(double);
  }

 private:
  std::size_t n_;
  FftPlan fft_;
  std::vector<Complex> rotation_;
  std::vector<double> scale_;
};

inline SparseCoeffs dct_forward(const Signal& x) {
  detail::require(x.size() >= 1, ErrorKind::dimension, "dct_forward: empty input");
  return DctPlan(static_cast<std::size_t>(x.size())).forward(x);
}

inline Signal dct_inverse(const SparseCoeffs& c) {
  detail::require(c.size() >= 1, ErrorKind::dimension, "dct_inverse: empty input");
  return DctPlan(static_cast<std::size_t>(c.size())).inverse(c);
}

/// Entry (row, col) of the synthesis basis: a_col cos(pi (2 row + 1) col / 2n).
inline double psi_entry(std::size_t n, std::size_t row, std::size_t col) {
  const double dn = static_cast<double>(n);
  const double a = col == 0 ? std::sqrt(1.0 / dn) : std::sqrt(2.0 / dn);
  // reduce the phase index mod 4n so large n keeps full precision in cos()
  const auto phase = (static_cast<unsigned long long>(2 * row + 1) * col) % (4ULL * n);
  return a * std::cos(std::numbers::pi * static_cast<double>(phase) / (2.0 * dn));
}

/// Dense n x n synthesis matrix Psi, built entrywise from the cosine formula.
/// Test and small-problem use only; refused above kDenseOracleCap.
inline Matrix dense_psi(std::size_t n) {
  detail::require(n >= 1, ErrorKind::dimension, "dense_psi: n must be at least 1");
  if (n > kDenseOracleCap) {
    throw Error(ErrorKind::size, "dense_psi: n = " + std::to_string(n) + " exceeds the dense cap of " +
                                     std::to_string(kDenseOracleCap) +
                                     "; use the matrix-free ThetaOperator instead");
  }
  const auto en = static_cast<Eigen::Index>(n);
  Matrix psi(en, en);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      psi(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = psi_entry(n, r, c);
    }
  }
  return psi;
}

}  // namespace csense

#endif  // CSENSE_DCT_HPP
