#ifndef CSENSE_FFT_HPP
#define CSENSE_FFT_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "csense/error.hpp"

namespace csense {

/// Complex DFT of arbitrary length. Powers of two use an iterative radix-2
/// kernel; every other length goes through Bluestein's chirp-z identity on a
/// padded power-of-two transform. The plan is immutable after construction,
/// so one instance can be shared by concurrent callers.
class FftPlan {
 public:
  using Complex = std::complex<double>;

  explicit FftPlan(std::size_t n) : n_(n) {
    detail::require(n >= 1, ErrorKind::dimension, "FFT length must be at least 1");
    if (is_pow2(n)) {
      build_radix2(n, twiddle_, bitrev_);
      return;
    }
    m_ = 1;
    while (m_ < 2 * n - 1) m_ <<= 1;
    build_radix2(m_, twiddle_, bitrev_);

    // chirp w_k = exp(-i pi k^2 / n); k^2 reduced mod 2n keeps the angle exact
    chirp_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const auto k2 = static_cast<unsigned long long>(k) * k % (2ULL * n);
      const double angle = -std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n);
      chirp_[k] = std::polar(1.0, angle);
    }
    kernel_.assign(m_, Complex{});
    kernel_[0] = std::conj(chirp_[0]);
    for (std::size_t k = 1; k < n; ++k) {
      kernel_[k] = std::conj(chirp_[k]);
      kernel_[m_ - k] = std::conj(chirp_[k]);
    }
    radix2(kernel_, false);
  }

  std::size_t size() const noexcept { return n_; }

  /// In-place transform. Forward uses exp(-2 pi i jk/n); inverse is scaled by 1/n.
  void transform(std::span<Complex> data, bool inverse) const {
    detail::require(data.size() == n_, ErrorKind::dimension, "FFT buffer length mismatch");
    if (n_ == 1) return;
    if (m_ == 0) {
      radix2(data, inverse);
    } else {
      bluestein(data, inverse);
    }
    if (inverse) {
      const double scale = 1.0 / static_cast<double>(n_);
      for (auto& v : data) v *= scale;
    }
  }

  /// Bytes held by the precomputed tables.
  std::size_t state_bytes() const noexcept {
    return (twiddle_.size() + chirp_.size() + kernel_.size()) * sizeof(Complex) +
           bitrev_.size() * sizeof(std::size_t);
  }

 private:
  static bool is_pow2(std::size_t n) { return (n & (n - 1)) == 0; }

  static void build_radix2(std::size_t m, std::vector<Complex>& twiddle,
                           std::vector<std::size_t>& bitrev) {
    twiddle.resize(m / 2);
    for (std::size_t k = 0; k < m / 2; ++k) {
      twiddle[k] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) /
                                       static_cast<double>(m));
    }
    bitrev.resize(m);
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < m) ++bits;
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t r = 0;
      for (std::size_t b = 0; b < bits; ++b) r |= ((i >> b) & 1U) << (bits - 1 - b);
      bitrev[i] = r;
    }
  }

  // Unscaled radix-2 transform of length twiddle_.size() * 2.
  void radix2(std::span<Complex> a, bool inverse) const {
    const std::size_t m = a.size();
    if (m == 1) return;
    for (std::size_t i = 0; i < m; ++i) {
      if (i < bitrev_[i]) std::swap(a[i], a[bitrev_[i]]);
    }
    for (std::size_t len = 2; len <= m; len <<= 1) {
      const std::size_t half = len / 2;
      const std::size_t stride = m / len;
      for (std::size_t start = 0; start < m; start += len) {
        for (std::size_t k = 0; k < half; ++k) {
          Complex w = twiddle_[k * stride];
          if (inverse) w = std::conj(w);
          const Complex u = a[start + k];
          const Complex v = a[start + k + half] * w;
          a[start + k] = u + v;
          a[start + k + half] = u - v;
        }
      }
    }
  }

  void bluestein(std::span<Complex> data, bool inverse) const {
    std::vector<Complex> work(m_, Complex{});
    for (std::size_t k = 0; k < n_; ++k) {
      const Complex c = inverse ? std::conj(chirp_[k]) : chirp_[k];
      work[k] = data[k] * c;
    }
    radix2(work, false);
    for (std::size_t k = 0; k < m_; ++k) {
      // kernel is index-symmetric, so its spectrum is even and the inverse
      // chirp's spectrum is the plain conjugate
      work[k] *= inverse ? std::conj(kernel_[k]) : kernel_[k];
    }
    radix2(work, true);
    const double scale = 1.0 / static_cast<double>(m_);
    for (std::size_t k = 0; k < n_; ++k) {
      const Complex c = inverse ? std::conj(chirp_[k]) : chirp_[k];
      data[k] = work[k] * scale * c;
    }
  }

  std::size_t n_;
  std::size_t m_ = 0;
  std::vector<Complex> twiddle_;
  std::vector<std::size_t> bitrev_;
  std::vector<Complex> chirp_;
  std::vector<Complex> kernel_;
};

}  // namespace csense

#endif  // CSENSE_FFT_HPP
