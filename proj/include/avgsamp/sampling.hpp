#pragma once

#include <cstdint>
#include <map>

#include "avgsamp/common.hpp"
#include "avgsamp/kernels.hpp"
#include "avgsamp/simulate.hpp"
#include "avgsamp/spectral.hpp"

namespace avgsamp {

enum class WeightFamily { point, uniform, triangular };

struct HalfWidths {
  double lo;  // sigma'_n: window extends to node - lo
  double hi;  // sigma''_n: window extends to node + hi
};

/// Non-negative normalized averaging weights u_n supported in
/// [node - sigma'_n, node + sigma''_n]. Half-widths are either the constant
/// sigma or drawn per node uniformly from [0, sigma] (to exercise the
/// sup-based definition); sigma is always the sup. Point family means exact
/// sampling (sigma = 0).
class AveragingScheme {
 public:
  static AveragingScheme point();
  static AveragingScheme uniform(double sigma);
  static AveragingScheme triangular(double sigma);
  /// Per-node half-widths uniform in [0, sigma], seeded and deterministic.
  static AveragingScheme randomized(WeightFamily family, double sigma,
                                    std::uint64_t rule_seed);

  WeightFamily family() const { return family_; }
  double sigma() const { return sigma_; }
  bool randomized() const { return randomized_; }
  HalfWidths half_widths(std::int64_t n, double t) const;

  /// Enforces the window constraint sigma <= pi/(2w) for this grid.
  void validate_for(const SamplingGrid& grid) const;

 private:
  AveragingScheme(WeightFamily family, double sigma, bool randomized,
                  std::uint64_t rule_seed);

  WeightFamily family_;
  double sigma_;
  bool randomized_;
  std::uint64_t rule_seed_;
};

/// <f(.,lambda), u_n> over the window around node n. Closed forms for the
/// Fourier kernel with uniform/triangular weights; adaptive Gauss-Legendre
/// (rel tol 1e-10) otherwise.
cdouble local_average_kernel(const KernelFunction& kernel, double lambda,
                             const AveragingScheme& scheme,
                             const SamplingGrid& grid, std::int64_t n,
                             double t);

/// <xi, u_n> = sum_k <f(.,lambda_k), u_n> Z_k (exact by linearity).
cdouble local_average_path(const Realization& real,
                           const AveragingScheme& scheme,
                           const SamplingGrid& grid, std::int64_t n, double t);

/// Truncated WKS sum of the given node values over the window I_N(t).
/// Throws when a window node is missing from `values`.
cdouble wks_truncated(const std::map<std::int64_t, cdouble>& values,
                      const SamplingGrid& grid, double t, int N);

/// Average-sampling reconstruction A_{u,N}(xi;t): the truncated WKS sum of
/// the local averages. Requires w > gamma.
cdouble avg_truncated(const Realization& real, const AveragingScheme& scheme,
                      const SamplingGrid& grid, double t, int N);

/// Per-node deterministic error functional g with
/// xi(t) - A_{u,N}(xi;t) = sum_k g_k Z_k for every realization.
/// Nodes are processed in parallel.
Eigen::VectorXcd error_coefficients(const ProcessModel& model,
                                    const AveragingScheme& scheme,
                                    const SamplingGrid& grid, double t, int N);

/// Hermitian quadratic form sum_jk g_j conj(g_k) F_jk, clipped of negative
/// dust within 1e-10 of the term-magnitude scale; larger negativity throws.
double spectral_quadratic_form(const ProcessModel& model,
                               const Eigen::VectorXcd& g);

/// Exact mean-square truncation error E|xi(t) - A_{u,N}(xi;t)|^2 computed
/// through the spectral form.
double exact_mse(const ProcessModel& model, const AveragingScheme& scheme,
                 const SamplingGrid& grid, double t, int N);

/// Exact E|Y_N(xi;t) - A_{u,N}(xi;t)|^2: the average-vs-exact-sampling gap
/// that Lemma-style bounds control.
double exact_gap_mse(const ProcessModel& model, const AveragingScheme& scheme,
                     const SamplingGrid& grid, double t, int N);

/// Diagnostic counter: number of exact_mse evaluations whose negative dust
/// was clipped to zero.
std::uint64_t negative_dust_clips();

}  // namespace avgsamp
