#include "avgsamp/kernels.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace avgsamp {

SamplingGrid::SamplingGrid(double w) : w_(w) {
  if (!(w > 0.0) || !std::isfinite(w)) {
    throw ValidationError("SamplingGrid: w must be finite and > 0");
  }
}

HoelderPair::HoelderPair(double p_, double q_) : p(p_), q(q_) {
  if (!(p > 1.0) || !(q > 1.0) || !std::isfinite(p) || !std::isfinite(q)) {
    throw ValidationError("HoelderPair: p and q must be finite and > 1");
  }
  if (std::abs(1.0 / p + 1.0 / q - 1.0) > 1e-12) {
    throw ValidationError("HoelderPair: 1/p + 1/q must equal 1");
  }
}

HoelderPair HoelderPair::conjugate(double p_) {
  if (!(p_ > 1.0) || !std::isfinite(p_)) {
    throw ValidationError("HoelderPair: p must be finite and > 1");
  }
  return HoelderPair(p_, p_ / (p_ - 1.0));
}

double sinc_term(const SamplingGrid& grid, double t, std::int64_t n) {
  const double u = grid.w() * t - static_cast<double>(n) * kPi;
  if (std::abs(u) < 1e-8) {
    const double u2 = u * u;
    return 1.0 - u2 / 6.0 + u2 * u2 / 120.0;
  }
  return std::sin(u) / u;
}

std::int64_t nearest_index(const SamplingGrid& grid, double x) {
  if (!std::isfinite(x)) {
    throw ValidationError("nearest_index: x must be finite");
  }
  const double v = x * grid.w() / kPi;
  return static_cast<std::int64_t>(std::floor(v + 0.5));
}

std::vector<std::int64_t> index_window(const SamplingGrid& grid, double t,
                                       int N) {
  if (N < 1) {
    throw ValidationError("index_window: N must be >= 1, got " +
                          std::to_string(N));
  }
  if (!std::isfinite(t)) {
    throw ValidationError("index_window: t must be finite");
  }
  const double v = t * grid.w() / kPi;
  const auto lo = static_cast<std::int64_t>(std::ceil(v - N));
  const auto hi = static_cast<std::int64_t>(std::floor(v + N));
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t n = lo; n <= hi; ++n) out.push_back(n);
  return out;
}

double dirichlet_lambda(double q) {
  if (!(q > 1.0) || !std::isfinite(q)) {
    throw ValidationError("dirichlet_lambda: requires q > 1 (series diverges)");
  }
  constexpr double kTol = 1e-13;
  constexpr std::uint64_t kBlock = 4096;
  // Kahan summation: up to ~1e5 terms for q near 1.5, and plain
  // accumulation would drift past the accuracy target.
  double sum = 0.0, carry = 0.0;
  std::uint64_t n = 1;
  for (;;) {
    const std::uint64_t end = n + kBlock;
    for (; n < end; ++n) {
      const double term = std::pow(2.0 * static_cast<double>(n) - 1.0, -q);
      const double y = term - carry;
      const double s = sum + y;
      carry = (s - sum) - y;
      sum = s;
    }
    const double two_k = 2.0 * static_cast<double>(n - 1);
    if (q * std::pow(two_k, -q - 1.0) / 12.0 < kTol) {
      // Midpoint tail integral over [K + 1/2, inf).
      return sum + std::pow(two_k, 1.0 - q) / (2.0 * (q - 1.0));
    }
  }
}

double abs_sin_reduced(const SamplingGrid& grid, double t) {
  const std::int64_t k = nearest_index(grid, t);
  return std::abs(std::sin(grid.w() * t - static_cast<double>(k) * kPi));
}

double c_q(const SamplingGrid& grid, double t, const HoelderPair& pair) {
  const double s = abs_sin_reduced(grid, t);
  const double base = 1.0 + std::pow(2.0, pair.q + 1.0) * std::pow(s, pair.q) *
                                dirichlet_lambda(pair.q) / std::pow(kPi, pair.q);
  return std::pow(base, 2.0 / pair.q);
}

namespace {

double l0_core(const SamplingGrid& grid, double gamma, double sup_f,
               double at) {
  if (!(gamma >= 0.0) || !(gamma < grid.w())) {
    throw ValidationError("l0: requires 0 <= gamma < w");
  }
  if (!(sup_f >= 0.0)) {
    throw ValidationError("l0: sup bound must be >= 0");
  }
  return 4.0 * grid.w() * sup_f * abs_sin_reduced(grid, at) /
         (kPi * (grid.w() - gamma) * (1.0 - std::exp(-kPi)));
}

}  // namespace

double l0_deterministic(const SamplingGrid& grid, double gamma, double sup_f,
                        double z) {
  return l0_core(grid, gamma, sup_f, z);
}

double l0_tilde(const SamplingGrid& grid, double gamma, double sup_f,
                double t) {
  return l0_core(grid, gamma, sup_f, t);
}

}  // namespace avgsamp
