#ifndef CSENSE_SAMPLING_HPP
#define CSENSE_SAMPLING_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "csense/dct.hpp"
#include "csense/error.hpp"
#include "csense/rng.hpp"
#include "csense/theta.hpp"
#include "csense/types.hpp"

namespace csense {

/// Sampled entries of a signal: the row selection C together with y = C x.
struct SampleSet {
  std::size_t n = 0;
  std::vector<std::size_t> indices;
  Vector values;

  std::size_t size() const noexcept { return indices.size(); }

  void validate() const {
    detail::require_sorted_indices(indices, n);
    detail::require(static_cast<std::size_t>(values.size()) == indices.size(),
                    ErrorKind::dimension, "SampleSet: values and indices differ in length");
  }
};

struct MeasurementBudget {
  std::size_t sparsity = 0;  // K
  std::size_t n = 0;
  double k1 = 1.0;
  std::size_t measurements = 0;  // p
};

/// Floor(fraction * n), the truncating sample count.
inline std::size_t sample_count(std::size_t n, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw Error(ErrorKind::range, "fraction must lie in (0, 1], got " + std::to_string(fraction));
  }
  const auto p = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n)));
  if (p < 1) {
    throw Error(ErrorKind::budget, "fraction " + std::to_string(fraction) + " of n = " +
                                       std::to_string(n) + " selects no samples");
  }
  return p;
}

/// Exactly p distinct indices from [0, n), uniform without replacement, sorted.
/// Partial Fisher-Yates driven by xoshiro256** seeded from `seed`.
inline std::vector<std::size_t> sample_indices_exact(std::size_t n, std::size_t p,
                                                     std::uint64_t seed) {
  detail::require(p >= 1, ErrorKind::budget, "sample count must be at least 1");
  detail::require(p <= n, ErrorKind::budget,
                  "cannot draw " + std::to_string(p) + " samples from n = " + std::to_string(n));
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  Xoshiro256 rng(seed);
  for (std::size_t i = 0; i < p; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(p);
  std::sort(pool.begin(), pool.end());
  return pool;
}

inline std::vector<std::size_t> sample_indices(std::size_t n, double fraction,
                                               std::uint64_t seed) {
  detail::require(n >= 1, ErrorKind::dimension, "n must be at least 1");
  return sample_indices_exact(n, sample_count(n, fraction), seed);
}

inline SampleSet measure(const Signal& x, std::vector<std::size_t> indices) {
  const auto n = static_cast<std::size_t>(x.size());
  detail::require_sorted_indices(indices, n);
  SampleSet set;
  set.n = n;
  set.values.resize(static_cast<Eigen::Index>(indices.size()));
  for (std::size_t j = 0; j < indices.size(); ++j) {
    set.values[static_cast<Eigen::Index>(j)] = x[static_cast<Eigen::Index>(indices[j])];
  }
  set.indices = std::move(indices);
  return set;
}

/// p = max(1, ceil(k1 K ln(n / K))).
inline MeasurementBudget estimate_measurements(std::size_t sparsity, std::size_t n, double k1) {
  if (sparsity == 0) throw Error(ErrorKind::domain, "sparsity K must be at least 1");
  if (sparsity >= n) {
    throw Error(ErrorKind::domain, "sparsity K = " + std::to_string(sparsity) +
                                       " must be below n = " + std::to_string(n));
  }
  if (!(k1 > 0.0) || !std::isfinite(k1)) {
    throw Error(ErrorKind::domain, "k1 must be a positive finite constant");
  }
  const double k = static_cast<double>(sparsity);
  const double estimate = k1 * k * std::log(static_cast<double>(n) / k);
  MeasurementBudget budget;
  budget.sparsity = sparsity;
  budget.n = n;
  budget.k1 = k1;
  budget.measurements = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(estimate)));
  return budget;
}

/// max |<c_i, psi_j>| over sampled rows i and all basis columns j. The rows of
/// C are canonical vectors, so each inner product is the Psi entry itself.
inline double mutual_coherence(const std::vector<std::size_t>& indices, std::size_t n) {
  detail::require(n >= 1, ErrorKind::dimension, "n must be at least 1");
  detail::require_sorted_indices(indices, n);
  double best = 0.0;
  for (const std::size_t row : indices) {
    for (std::size_t col = 0; col < n; ++col) best = std::max(best, std::abs(psi_entry(n, row, col)));
  }
  return best;
}

}  // namespace csense

#endif  // CSENSE_SAMPLING_HPP
