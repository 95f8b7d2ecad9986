#include "avgsamp/reference.hpp"

#include <cmath>

#include "avgsamp/rng.hpp"

namespace avgsamp::serial {

MonteCarloResult monte_carlo_mse(const std::shared_ptr<const ProcessModel>& model,
                                 const AveragingScheme& scheme,
                                 const SamplingGrid& grid, double t, int N,
                                 int trials, std::uint64_t seed) {
  if (!model) throw ValidationError("monte_carlo_mse: model required");
  if (trials < 2) {
    throw ValidationError("monte_carlo_mse: trials must be >= 2");
  }
  if (!(grid.w() > model->gamma())) {
    throw ValidationError("monte_carlo_mse: requires w > gamma");
  }
  scheme.validate_for(grid);

  const MeasureFactor factor = factorize(model->measure());
  std::vector<double> sq_err(static_cast<std::size_t>(trials));
  for (int i = 0; i < trials; ++i) {
    const Realization real = sample_path(
        model, factor, counter_hash(seed, static_cast<std::uint64_t>(i)));
    const cdouble err =
        evaluate(real, t) - avg_truncated(real, scheme, grid, t, N);
    sq_err[static_cast<std::size_t>(i)] = std::norm(err);
  }
  const double mean = pairwise_sum(sq_err) / trials;
  std::vector<double> sq_dev(sq_err.size());
  for (std::size_t i = 0; i < sq_err.size(); ++i) {
    const double d = sq_err[i] - mean;
    sq_dev[i] = d * d;
  }
  const double sd = std::sqrt(pairwise_sum(sq_dev) / (trials - 1));
  return {mean, sd / std::sqrt(static_cast<double>(trials))};
}

Eigen::VectorXcd error_coefficients(const ProcessModel& model,
                                    const AveragingScheme& scheme,
                                    const SamplingGrid& grid, double t, int N) {
  if (!(grid.w() > model.gamma())) {
    throw ValidationError("sampling: requires w > gamma");
  }
  scheme.validate_for(grid);
  const auto window = index_window(grid, t, N);
  const auto& nodes = model.measure().nodes();
  Eigen::VectorXcd g(static_cast<Eigen::Index>(nodes.size()));
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    cdouble acc(0.0, 0.0);
    for (std::int64_t n : window) {
      acc += local_average_kernel(model.kernel(), nodes[k], scheme, grid, n, t) *
             sinc_term(grid, t, n);
    }
    g[static_cast<Eigen::Index>(k)] = model.kernel().value(t, nodes[k]) - acc;
  }
  return g;
}

double exact_mse(const ProcessModel& model, const AveragingScheme& scheme,
                 const SamplingGrid& grid, double t, int N) {
  const Eigen::VectorXcd g = serial::error_coefficients(model, scheme, grid, t, N);
  const auto& F = model.measure().masses();
  const auto m = F.rows();
  std::vector<cdouble> rows(static_cast<std::size_t>(m));
  for (Eigen::Index j = 0; j < m; ++j) {
    cdouble row(0.0, 0.0);
    for (Eigen::Index k = 0; k < m; ++k) {
      row += std::conj(g[k]) * F(j, k);
    }
    rows[static_cast<std::size_t>(j)] = g[j] * row;
  }
  const double value = pairwise_sum(rows).real();
  return value < 0.0 ? 0.0 : value;
}

}  // namespace avgsamp::serial
