#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "avgsamp/rng.hpp"
#include "avgsamp/spectral.hpp"

namespace testsup {

// Hermitian PSD mass matrix F = A A^H / m with Gaussian A; the mirror fill
// makes Hermitian symmetry exact in floating point.
inline avgsamp::SpectralMeasure random_psd_measure(std::vector<double> nodes,
                                                   std::uint64_t seed) {
  const auto m = static_cast<Eigen::Index>(nodes.size());
  Eigen::MatrixXcd a(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) {
      a(j, i) = avgsamp::complex_gaussian(
          seed, static_cast<std::uint64_t>(j * m + i));
    }
  }
  Eigen::MatrixXcd f(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index k = j; k < m; ++k) {
      avgsamp::cdouble acc(0.0, 0.0);
      for (Eigen::Index i = 0; i < m; ++i) {
        acc += a(j, i) * std::conj(a(k, i));
      }
      f(j, k) = acc / static_cast<double>(m);
      f(k, j) = std::conj(f(j, k));
    }
  }
  return avgsamp::SpectralMeasure(std::move(nodes), std::move(f));
}

// The 4-node Fourier reference model used across the suites (gamma = 1).
inline std::shared_ptr<const avgsamp::ProcessModel> reference_model(
    std::uint64_t seed = 2024) {
  return std::make_shared<const avgsamp::ProcessModel>(
      avgsamp::KernelFunction::fourier(),
      random_psd_measure({-1.0, -0.3, 0.5, 1.0}, seed));
}

// Constant-in-time process: a single spectral node at lambda = 0.
inline std::shared_ptr<const avgsamp::ProcessModel> constant_model(
    double variance = 1.0) {
  Eigen::MatrixXcd f(1, 1);
  f(0, 0) = avgsamp::cdouble(variance, 0.0);
  return std::make_shared<const avgsamp::ProcessModel>(
      avgsamp::KernelFunction::fourier(),
      avgsamp::SpectralMeasure({0.0}, std::move(f)));
}

// Independent oracle quadrature: adaptive Simpson, nothing shared with the
// library's Gauss-Legendre path.
inline avgsamp::cdouble simpson_oracle(
    const std::function<avgsamp::cdouble(double)>& f, double a, double b,
    int depth = 0) {
  const double m = 0.5 * (a + b);
  const auto simpson = [&](double lo, double mid, double hi) {
    return (hi - lo) / 6.0 * (f(lo) + 4.0 * f(mid) + f(hi));
  };
  const avgsamp::cdouble whole = simpson(a, m, b);
  const avgsamp::cdouble left = simpson(a, 0.5 * (a + m), m);
  const avgsamp::cdouble right = simpson(m, 0.5 * (m + b), b);
  if (depth > 40 ||
      std::abs(left + right - whole) < 1e-12 * (1.0 + std::abs(whole))) {
    return left + right;
  }
  return simpson_oracle(f, a, m, depth + 1) +
         simpson_oracle(f, m, b, depth + 1);
}

}  // namespace testsup
