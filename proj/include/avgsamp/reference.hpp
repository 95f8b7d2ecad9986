#pragma once

#include "avgsamp/sampling.hpp"
#include "avgsamp/simulate.hpp"

namespace avgsamp::serial {

// Straight-line serial implementations of the parallel kernels. They follow
// the same seeding and pairwise-reduction contract, so results must match
// the OpenMP paths bit-for-bit; tests and the benchmark rely on that.

MonteCarloResult monte_carlo_mse(const std::shared_ptr<const ProcessModel>& model,
                                 const AveragingScheme& scheme,
                                 const SamplingGrid& grid, double t, int N,
                                 int trials, std::uint64_t seed);

Eigen::VectorXcd error_coefficients(const ProcessModel& model,
                                    const AveragingScheme& scheme,
                                    const SamplingGrid& grid, double t, int N);

double exact_mse(const ProcessModel& model, const AveragingScheme& scheme,
                 const SamplingGrid& grid, double t, int N);

}  // namespace avgsamp::serial
