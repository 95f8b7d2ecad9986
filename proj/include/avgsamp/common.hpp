#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace avgsamp {

using cdouble = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/// Invalid arguments, malformed configs, violated preconditions (CLI exit 1).
class ValidationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Numerical failures: non-PSD measures, quadrature non-convergence,
/// negative mass beyond tolerance (CLI exit 3).
class NumericalError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// Fixed binary reduction tree. The result depends only on the element order
// in `v`, never on how the vector was filled, so parallel producers and the
// serial reference reduce to bit-identical sums.
template <typename T>
T pairwise_sum_range(const std::vector<T>& v, std::size_t lo, std::size_t hi) {
  const std::size_t n = hi - lo;
  if (n == 0) return T{};
  if (n <= 8) {
    T acc = v[lo];
    for (std::size_t i = lo + 1; i < hi; ++i) acc += v[i];
    return acc;
  }
  const std::size_t mid = lo + n / 2;
  return pairwise_sum_range(v, lo, mid) + pairwise_sum_range(v, mid, hi);
}

}  // namespace detail

template <typename T>
T pairwise_sum(const std::vector<T>& v) {
  return detail::pairwise_sum_range(v, 0, v.size());
}

}  // namespace avgsamp
