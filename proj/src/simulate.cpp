#include "avgsamp/simulate.hpp"

#include <cmath>

#include "avgsamp/rng.hpp"
#include "avgsamp/sampling.hpp"

namespace avgsamp {

MeasureFactor factorize(const SpectralMeasure& measure) {
  const auto& F = measure.masses();
  const auto m = F.rows();
  const double scale = measure.scale();
  if (scale == 0.0) return {Eigen::MatrixXcd(m, 0)};

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(F);
  if (es.info() != Eigen::Success) {
    throw NumericalError("factorize: eigendecomposition failed");
  }
  const auto& ev = es.eigenvalues();
  if (ev.minCoeff() < -1e-10 * scale) {
    throw NumericalError("factorize: measure is not positive semidefinite");
  }
  const double cutoff = 1e-14 * ev.maxCoeff();

  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = m - 1; i >= 0; --i) {  // descending eigenvalue
    if (ev(i) > cutoff) keep.push_back(i);
  }
  Eigen::MatrixXcd loading(m, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    Eigen::VectorXcd col = es.eigenvectors().col(keep[c]);
    // Phase convention: largest-modulus entry real positive.
    Eigen::Index imax = 0;
    col.cwiseAbs().maxCoeff(&imax);
    const cdouble pivot = col(imax);
    if (std::abs(pivot) > 0.0) col *= std::conj(pivot) / std::abs(pivot);
    loading.col(static_cast<Eigen::Index>(c)) = col * std::sqrt(ev(keep[c]));
  }

  const double recon_err =
      (loading * loading.adjoint() - F).cwiseAbs().maxCoeff();
  if (recon_err > 1e-10 * scale) {
    throw NumericalError("factorize: reconstruction drift " +
                         std::to_string(recon_err));
  }
  return {std::move(loading)};
}

Realization sample_path(std::shared_ptr<const ProcessModel> model,
                        const MeasureFactor& factor, std::uint64_t seed) {
  if (!model) throw ValidationError("sample_path: model required");
  const auto m = model->measure().masses().rows();
  if (factor.loading.rows() != m) {
    throw ValidationError("sample_path: factor does not match the measure");
  }
  Eigen::VectorXcd zeta(factor.rank());
  for (Eigen::Index j = 0; j < zeta.size(); ++j) {
    zeta[j] = complex_gaussian(seed, static_cast<std::uint64_t>(j));
  }
  Eigen::VectorXcd amplitudes = factor.loading * zeta;
  if (amplitudes.size() == 0) amplitudes = Eigen::VectorXcd::Zero(m);
  if (model->real_process()) {
    // Z <- (Z + P conj(Z)) / sqrt(2): keeps E[Z Z^H] = F on reflection-
    // invariant measures and makes every path real-valued.
    Eigen::VectorXcd coupled(m);
    for (Eigen::Index j = 0; j < m; ++j) {
      coupled[j] =
          (amplitudes[j] + std::conj(amplitudes[m - 1 - j])) / std::sqrt(2.0);
    }
    amplitudes = std::move(coupled);
  }
  return {std::move(model), std::move(amplitudes)};
}

cdouble evaluate(const Realization& real, double t) {
  if (!real.model) throw ValidationError("evaluate: realization lacks a model");
  const auto& nodes = real.model->measure().nodes();
  cdouble acc(0.0, 0.0);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    acc += real.model->kernel().value(t, nodes[k]) *
           real.amplitudes[static_cast<Eigen::Index>(k)];
  }
  return acc;
}

namespace detail {

MonteCarloResult monte_carlo_mse_impl(
    const std::shared_ptr<const ProcessModel>& model,
    const AveragingScheme& scheme, const SamplingGrid& grid, double t, int N,
    int trials, std::uint64_t seed, bool parallel) {
  if (!model) throw ValidationError("monte_carlo_mse: model required");
  if (trials < 2) {
    throw ValidationError("monte_carlo_mse: trials must be >= 2");
  }
  if (!(grid.w() > model->gamma())) {
    throw ValidationError("monte_carlo_mse: requires w > gamma");
  }
  scheme.validate_for(grid);

  const auto window = index_window(grid, t, N);
  const auto& nodes = model->measure().nodes();
  const auto m = static_cast<Eigen::Index>(nodes.size());

  // Trial-independent pieces: kernel values at t, the per-(node, lambda)
  // local-average coefficients, and the sinc factors.
  Eigen::VectorXcd f_t(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    f_t[k] = model->kernel().value(t, nodes[static_cast<std::size_t>(k)]);
  }
  std::vector<double> sinc(window.size());
  Eigen::MatrixXcd avg_coeff(static_cast<Eigen::Index>(window.size()), m);
  for (std::size_t i = 0; i < window.size(); ++i) {
    sinc[i] = sinc_term(grid, t, window[i]);
    for (Eigen::Index k = 0; k < m; ++k) {
      avg_coeff(static_cast<Eigen::Index>(i), k) = local_average_kernel(
          model->kernel(), nodes[static_cast<std::size_t>(k)], scheme, grid,
          window[i], t);
    }
  }

  const MeasureFactor factor = factorize(model->measure());

  std::vector<double> sq_err(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(static) if (parallel)
  for (int i = 0; i < trials; ++i) {
    const Realization real =
        sample_path(model, factor, counter_hash(seed, static_cast<std::uint64_t>(i)));
    cdouble xi_t(0.0, 0.0);
    for (Eigen::Index k = 0; k < m; ++k) {
      xi_t += f_t[k] * real.amplitudes[k];
    }
    cdouble recon(0.0, 0.0);
    for (std::size_t n = 0; n < window.size(); ++n) {
      cdouble avg(0.0, 0.0);
      for (Eigen::Index k = 0; k < m; ++k) {
        avg += avg_coeff(static_cast<Eigen::Index>(n), k) * real.amplitudes[k];
      }
      recon += avg * sinc[n];
    }
    sq_err[static_cast<std::size_t>(i)] = std::norm(xi_t - recon);
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

}  // namespace detail

MonteCarloResult monte_carlo_mse(const std::shared_ptr<const ProcessModel>& model,
                                 const AveragingScheme& scheme,
                                 const SamplingGrid& grid, double t, int N,
                                 int trials, std::uint64_t seed) {
  return detail::monte_carlo_mse_impl(model, scheme, grid, t, N, trials, seed,
                                      /*parallel=*/true);
}

}  // namespace avgsamp
