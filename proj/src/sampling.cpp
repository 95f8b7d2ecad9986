#include "avgsamp/sampling.hpp"

#include <atomic>
#include <cmath>
#include <iostream>

#include "avgsamp/quadrature.hpp"
#include "avgsamp/rng.hpp"

namespace avgsamp {

namespace {

std::atomic<std::uint64_t> g_dust_clips{0};

// Interleaves ...,-2,-1,0,1,2,... into 0,1,2,3,4,... for counter streams.
std::uint64_t zigzag(std::int64_t n) {
  return n >= 0 ? 2 * static_cast<std::uint64_t>(n)
                : 2 * static_cast<std::uint64_t>(-n) - 1;
}

// Series coefficients below match the Maclaurin expansions of the two
// window transforms; both switch well before cancellation sets in.

// (1/(a+b)) * int_{-a}^{b} e^{i lam y} dy.
cdouble uniform_transform(double lambda, double a, double b) {
  const double width = a + b;
  const double scale = std::abs(lambda) * std::max(a, b);
  if (scale < 1e-4) {
    const cdouble il(0.0, lambda);
    const double w1 = (b - a) / 2.0;
    const double w2 = (b * b * b + a * a * a) / (6.0 * width);
    const double w3 =
        (b * b * b * b - a * a * a * a) / (24.0 * width);
    const double w4 = (std::pow(b, 5) + std::pow(a, 5)) / (120.0 * width);
    return 1.0 + il * (w1 + il * (w2 + il * (w3 + il * w4)));
  }
  const cdouble num = std::polar(1.0, lambda * b) - std::polar(1.0, -lambda * a);
  return num / (cdouble(0.0, lambda) * width);
}

// int_0^s (1 - x/s) e^{i lam x} dx.
cdouble ramp_transform(double lambda, double s) {
  if (s == 0.0) return {0.0, 0.0};
  const double scale = std::abs(lambda) * s;
  if (scale < 1e-3) {
    const cdouble il(0.0, lambda);
    // sum_k (i lam)^k s^{k+1} / (k! (k+1)(k+2))
    return s / 2.0 +
           il * (s * s / 6.0 +
                 il * (s * s * s / 24.0 +
                       il * (std::pow(s, 4) / 120.0 +
                             il * std::pow(s, 5) / 720.0)));
  }
  const cdouble e = std::polar(1.0, lambda * s);
  return cdouble(0.0, 1.0 / lambda) + (1.0 - e) / (s * lambda * lambda);
}

// (2/(a+b)) * int hat_{a,b}(x - c) e^{i lam x} dx / e^{i lam c}, where the
// hat rises linearly over [-a, 0] and falls over [0, b].
cdouble triangular_transform(double lambda, double a, double b) {
  const double h = 2.0 / (a + b);
  return h * (std::conj(ramp_transform(lambda, a)) + ramp_transform(lambda, b));
}

double triangular_weight(double x, double c, double a, double b) {
  const double h = 2.0 / (a + b);
  if (x < c) return a > 0.0 ? h * (1.0 - (c - x) / a) : 0.0;
  return b > 0.0 ? h * (1.0 - (x - c) / b) : (x == c ? h : 0.0);
}

void require_reconstructible(const ProcessModel& model,
                             const SamplingGrid& grid) {
  if (!(grid.w() > model.gamma())) {
    throw ValidationError("sampling: requires w > gamma (w = " +
                          std::to_string(grid.w()) + ", gamma = " +
                          std::to_string(model.gamma()) + ")");
  }
}

}  // namespace

AveragingScheme::AveragingScheme(WeightFamily family, double sigma,
                                 bool randomized, std::uint64_t rule_seed)
    : family_(family),
      sigma_(sigma),
      randomized_(randomized),
      rule_seed_(rule_seed) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw ValidationError("AveragingScheme: sigma must be finite and >= 0");
  }
  if (family == WeightFamily::point && sigma != 0.0) {
    throw ValidationError("AveragingScheme: point family forces sigma = 0");
  }
  if (family != WeightFamily::point && sigma == 0.0 && randomized) {
    throw ValidationError("AveragingScheme: randomized rule needs sigma > 0");
  }
}

AveragingScheme AveragingScheme::point() {
  return AveragingScheme(WeightFamily::point, 0.0, false, 0);
}

AveragingScheme AveragingScheme::uniform(double sigma) {
  return AveragingScheme(WeightFamily::uniform, sigma, false, 0);
}

AveragingScheme AveragingScheme::triangular(double sigma) {
  return AveragingScheme(WeightFamily::triangular, sigma, false, 0);
}

AveragingScheme AveragingScheme::randomized(WeightFamily family, double sigma,
                                            std::uint64_t rule_seed) {
  if (family == WeightFamily::point) {
    throw ValidationError("AveragingScheme: cannot randomize the point family");
  }
  return AveragingScheme(family, sigma, true, rule_seed);
}

HalfWidths AveragingScheme::half_widths(std::int64_t n, double /*t*/) const {
  if (family_ == WeightFamily::point) return {0.0, 0.0};
  if (!randomized_) return {sigma_, sigma_};
  const std::uint64_t base = 2 * zigzag(n);
  return {sigma_ * uniform_halfopen(rule_seed_, base),
          sigma_ * uniform_halfopen(rule_seed_, base + 1)};
}

void AveragingScheme::validate_for(const SamplingGrid& grid) const {
  if (sigma_ > kPi / (2.0 * grid.w())) {
    throw ValidationError(
        "AveragingScheme: sigma exceeds the window constraint pi/(2w)");
  }
}

cdouble local_average_kernel(const KernelFunction& kernel, double lambda,
                             const AveragingScheme& scheme,
                             const SamplingGrid& grid, std::int64_t n,
                             double t) {
  scheme.validate_for(grid);
  const double c = grid.node(n);
  if (scheme.family() == WeightFamily::point) return kernel.value(c, lambda);
  const auto [a, b] = scheme.half_widths(n, t);
  if (a + b == 0.0) return kernel.value(c, lambda);

  if (kernel.is_fourier()) {
    if (lambda == 0.0) return {1.0, 0.0};
    const cdouble phase = std::polar(1.0, lambda * c);
    if (scheme.family() == WeightFamily::uniform) {
      return phase * uniform_transform(lambda, a, b);
    }
    return phase * triangular_transform(lambda, a, b);
  }

  const auto integrand = [&](double x) -> cdouble {
    const double weight = scheme.family() == WeightFamily::uniform
                              ? 1.0 / (a + b)
                              : triangular_weight(x, c, a, b);
    return kernel.value(x, lambda) * weight;
  };
  return integrate(integrand, c - a, c + b, 1e-10);
}

cdouble local_average_path(const Realization& real,
                           const AveragingScheme& scheme,
                           const SamplingGrid& grid, std::int64_t n, double t) {
  const auto& nodes = real.model->measure().nodes();
  cdouble acc(0.0, 0.0);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    acc += local_average_kernel(real.model->kernel(), nodes[k], scheme, grid,
                                n, t) *
           real.amplitudes[static_cast<Eigen::Index>(k)];
  }
  return acc;
}

cdouble wks_truncated(const std::map<std::int64_t, cdouble>& values,
                      const SamplingGrid& grid, double t, int N) {
  cdouble acc(0.0, 0.0);
  for (std::int64_t n : index_window(grid, t, N)) {
    const auto it = values.find(n);
    if (it == values.end()) {
      throw ValidationError("wks_truncated: missing sample value at node " +
                            std::to_string(n));
    }
    acc += it->second * sinc_term(grid, t, n);
  }
  return acc;
}

cdouble avg_truncated(const Realization& real, const AveragingScheme& scheme,
                      const SamplingGrid& grid, double t, int N) {
  require_reconstructible(*real.model, grid);
  cdouble acc(0.0, 0.0);
  for (std::int64_t n : index_window(grid, t, N)) {
    acc += local_average_path(real, scheme, grid, n, t) *
           sinc_term(grid, t, n);
  }
  return acc;
}

Eigen::VectorXcd error_coefficients(const ProcessModel& model,
                                    const AveragingScheme& scheme,
                                    const SamplingGrid& grid, double t, int N) {
  require_reconstructible(model, grid);
  scheme.validate_for(grid);
  const auto window = index_window(grid, t, N);
  std::vector<double> sinc(window.size());
  for (std::size_t i = 0; i < window.size(); ++i) {
    sinc[i] = sinc_term(grid, t, window[i]);
  }
  const auto& nodes = model.measure().nodes();
  const auto m = static_cast<Eigen::Index>(nodes.size());
  Eigen::VectorXcd g(m);
#pragma omp parallel for schedule(static)
  for (Eigen::Index k = 0; k < m; ++k) {
    const double lam = nodes[static_cast<std::size_t>(k)];
    cdouble acc(0.0, 0.0);
    for (std::size_t i = 0; i < window.size(); ++i) {
      acc += local_average_kernel(model.kernel(), lam, scheme, grid, window[i],
                                  t) *
             sinc[i];
    }
    g[k] = model.kernel().value(t, lam) - acc;
  }
  return g;
}

double spectral_quadratic_form(const ProcessModel& model,
                               const Eigen::VectorXcd& g) {
  const auto& F = model.measure().masses();
  const auto m = F.rows();
  if (g.size() != m) {
    throw ValidationError("spectral_quadratic_form: vector/measure mismatch");
  }
  std::vector<cdouble> rows(static_cast<std::size_t>(m));
  std::vector<double> abs_rows(static_cast<std::size_t>(m));
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < m; ++j) {
    cdouble row(0.0, 0.0);
    double abs_row = 0.0;
    for (Eigen::Index k = 0; k < m; ++k) {
      row += std::conj(g[k]) * F(j, k);
      abs_row += std::abs(g[k]) * std::abs(F(j, k));
    }
    rows[static_cast<std::size_t>(j)] = g[j] * row;
    abs_rows[static_cast<std::size_t>(j)] = std::abs(g[j]) * abs_row;
  }
  const cdouble total = pairwise_sum(rows);
  const double scale = pairwise_sum(abs_rows);
  const double tol = 1e-10 * scale;
  if (std::abs(total.imag()) > tol) {
    throw NumericalError(
        "spectral_quadratic_form: non-real value signals a broken measure");
  }
  double value = total.real();
  if (value < 0.0) {
    if (value < -tol) {
      throw NumericalError(
          "spectral_quadratic_form: negative mass beyond tolerance (" +
          std::to_string(value) + ")");
    }
    if (g_dust_clips.fetch_add(1) == 0) {
      std::clog << "avgsamp: clipped negative dust " << value
                << " in exact_mse (reported once)\n";
    }
    value = 0.0;
  }
  return value;
}

double exact_mse(const ProcessModel& model, const AveragingScheme& scheme,
                 const SamplingGrid& grid, double t, int N) {
  return spectral_quadratic_form(model,
                                 error_coefficients(model, scheme, grid, t, N));
}

double exact_gap_mse(const ProcessModel& model, const AveragingScheme& scheme,
                     const SamplingGrid& grid, double t, int N) {
  const Eigen::VectorXcd g_avg = error_coefficients(model, scheme, grid, t, N);
  const Eigen::VectorXcd g_point =
      error_coefficients(model, AveragingScheme::point(), grid, t, N);
  return spectral_quadratic_form(model, g_avg - g_point);
}

std::uint64_t negative_dust_clips() { return g_dust_clips.load(); }

}  // namespace avgsamp
