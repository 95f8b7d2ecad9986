#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>

#include "avgsamp/common.hpp"
#include "avgsamp/kernels.hpp"
#include "avgsamp/spectral.hpp"

namespace avgsamp {

class AveragingScheme;  // sampling.hpp

/// Low-rank factor L with L L^H = F (within 1e-10 * scale).
struct MeasureFactor {
  Eigen::MatrixXcd loading;  // m x r, columns ordered by descending weight

  int rank() const { return static_cast<int>(loading.cols()); }
};

/// Eigendecomposition-based factorization. Eigenvalues below the PSD
/// tolerance are rejected; small negative dust is clipped; near-zero modes
/// are dropped, so r is the numerical rank. Deterministic for a given F.
MeasureFactor factorize(const SpectralMeasure& measure);

/// One draw of the spectral amplitudes Z with E[Z Z^H] = F.
struct Realization {
  std::shared_ptr<const ProcessModel> model;
  Eigen::VectorXcd amplitudes;
};

/// Z = L zeta with zeta iid standard complex Gaussians from the counter
/// stream named by `seed`; identical seed gives identical Z bit-for-bit.
/// Real-process models apply the conjugate-reflection coupling.
Realization sample_path(std::shared_ptr<const ProcessModel> model,
                        const MeasureFactor& factor, std::uint64_t seed);

/// xi(t) = sum_k f(t, lambda_k) Z_k.
cdouble evaluate(const Realization& real, double t);

struct MonteCarloResult {
  double estimate;
  double std_error;
};

/// Sample mean and standard error of |xi(t) - A_{u,N}(xi;t)|^2 over
/// independent realizations. Per-trial seeds come from the master seed by
/// counter; the reduction is a fixed pairwise tree, so the result does not
/// depend on execution order or thread count. Trials run under OpenMP.
MonteCarloResult monte_carlo_mse(const std::shared_ptr<const ProcessModel>& model,
                                 const AveragingScheme& scheme,
                                 const SamplingGrid& grid, double t, int N,
                                 int trials, std::uint64_t seed);

}  // namespace avgsamp
