#include <cmath>
#include <doctest.h>
#include <map>

#include "avgsamp/reference.hpp"
#include "avgsamp/rng.hpp"
#include "avgsamp/sampling.hpp"
#include "test_support.hpp"

using namespace avgsamp;

TEST_CASE("averaging scheme invariants") {
  const auto point = AveragingScheme::point();
  CHECK(point.sigma() == 0.0);
  CHECK(point.half_widths(3, 0.7).lo == 0.0);

  const auto uni = AveragingScheme::uniform(0.2);
  CHECK(uni.half_widths(-5, 0.0).lo == 0.2);
  CHECK(uni.half_widths(-5, 0.0).hi == 0.2);

  const auto rnd = AveragingScheme::randomized(WeightFamily::uniform, 0.3, 9);
  for (std::int64_t n = -10; n <= 10; ++n) {
    const auto hw = rnd.half_widths(n, 1.0);
    CHECK(hw.lo >= 0.0);
    CHECK(hw.lo <= 0.3);
    CHECK(hw.hi >= 0.0);
    CHECK(hw.hi <= 0.3);
    // deterministic per node
    CHECK(rnd.half_widths(n, -2.0).lo == hw.lo);
  }

  CHECK_THROWS_AS(AveragingScheme::uniform(-0.1), ValidationError);
  CHECK_THROWS_AS(AveragingScheme::randomized(WeightFamily::point, 0.1, 1),
                  ValidationError);

  const SamplingGrid grid(2.0);
  CHECK_NOTHROW(AveragingScheme::uniform(kPi / 4.0).validate_for(grid));
  CHECK_THROWS_AS(AveragingScheme::uniform(0.8).validate_for(grid),
                  ValidationError);
}

TEST_CASE("local_average_kernel: normalization and degeneracies") {
  const SamplingGrid grid(2.0);
  const auto kernel = KernelFunction::fourier();
  // lambda = 0 (f == 1): every normalized family averages to exactly 1
  for (const auto& scheme :
       {AveragingScheme::point(), AveragingScheme::uniform(0.3),
        AveragingScheme::triangular(0.25),
        AveragingScheme::randomized(WeightFamily::uniform, 0.2, 4)}) {
    for (std::int64_t n : {-3, 0, 5}) {
      CHECK(local_average_kernel(kernel, 0.0, scheme, grid, n, 0.1) ==
            cdouble(1.0, 0.0));
    }
  }
  // point family: the sample value itself
  const double lam = 0.8;
  for (std::int64_t n : {-2, 0, 7}) {
    CHECK(local_average_kernel(kernel, lam, AveragingScheme::point(), grid, n,
                               0.0) == std::polar(1.0, grid.node(n) * lam));
  }
  // sigma = 0 uniform degenerates to the point value
  CHECK(local_average_kernel(kernel, lam, AveragingScheme::uniform(0.0), grid,
                             2, 0.0) == std::polar(1.0, grid.node(2) * lam));
}

TEST_CASE("local_average_kernel: closed forms match the sinc formula") {
  const SamplingGrid grid(2.0);
  const auto kernel = KernelFunction::fourier();
  const double sigma = 0.31;
  const auto scheme = AveragingScheme::uniform(sigma);
  for (const double lam : {-1.0, -0.3, 0.5, 1.0}) {
    for (const std::int64_t n : {-4, 0, 3}) {
      const cdouble got = local_average_kernel(kernel, lam, scheme, grid, n, 0.0);
      const cdouble want = std::polar(1.0, lam * grid.node(n)) *
                           (std::sin(lam * sigma) / (lam * sigma));
      CHECK(std::abs(got - want) < 1e-14);
    }
  }
}

TEST_CASE("local_average_kernel: closed forms match oracle quadrature") {
  const SamplingGrid grid(2.0);
  const auto kernel = KernelFunction::fourier();
  for (const auto family : {WeightFamily::uniform, WeightFamily::triangular}) {
    for (const bool randomized : {false, true}) {
      const auto scheme =
          randomized ? AveragingScheme::randomized(family, 0.3, 21)
                     : (family == WeightFamily::uniform
                            ? AveragingScheme::uniform(0.3)
                            : AveragingScheme::triangular(0.3));
      for (const double lam : {-1.0, -0.21, 0.0007, 0.64, 1.0}) {
        for (const std::int64_t n : {-3, 0, 2}) {
          const auto [lo, hi] = scheme.half_widths(n, 0.0);
          const double c = grid.node(n);
          const double width = lo + hi;
          if (width == 0.0) continue;
          const auto weight = [&](double x) {
            if (family == WeightFamily::uniform) return 1.0 / width;
            const double h = 2.0 / width;
            return x < c ? h * (1.0 - (c - x) / lo) : h * (1.0 - (x - c) / hi);
          };
          const cdouble want = testsup::simpson_oracle(
              [&](double x) {
                return std::polar(1.0, lam * x) * weight(x);
              },
              c - lo, c + hi);
          const cdouble got =
              local_average_kernel(kernel, lam, scheme, grid, n, 0.0);
          CHECK(std::abs(got - want) < 1e-9);
        }
      }
    }
  }
}

TEST_CASE("local_average_kernel: custom kernel goes through quadrature") {
  const SamplingGrid grid(2.0);
  // f(t, lambda) = cos(lambda t), entire of type |lambda|
  const auto kernel = KernelFunction::custom(
      [](double t, double lam) { return cdouble(std::cos(lam * t), 0.0); },
      [](double t, double lam) { return cdouble(-lam * std::sin(lam * t), 0.0); },
      [](double lam) { return std::abs(lam); }, 1.0, 1.0, 0.0);
  const auto scheme = AveragingScheme::uniform(0.4);
  const double lam = 0.9;
  for (const std::int64_t n : {-1, 0, 4}) {
    const double c = grid.node(n);
    const cdouble want = testsup::simpson_oracle(
        [&](double x) { return cdouble(std::cos(lam * x) / 0.8, 0.0); },
        c - 0.4, c + 0.4);
    const cdouble got = local_average_kernel(kernel, lam, scheme, grid, n, 0.0);
    CHECK(std::abs(got - want) < 1e-9);
  }
}

TEST_CASE("local_average_path: linearity and path-quadrature oracle") {
  const auto model = testsup::reference_model();
  const SamplingGrid grid(2.0);
  const auto scheme = AveragingScheme::uniform(0.25);
  const auto factor = factorize(model->measure());

  Realization zero{model, Eigen::VectorXcd::Zero(4)};
  CHECK(std::abs(local_average_path(zero, scheme, grid, 0, 0.0)) == 0.0);

  const auto cmodel = testsup::constant_model();
  const auto cpath = sample_path(cmodel, factorize(cmodel->measure()), 8);
  for (std::int64_t n : {-4, 1, 9}) {
    CHECK(std::abs(local_average_path(cpath, scheme, grid, n, 0.0) -
                   cpath.amplitudes[0]) < 1e-15);
  }

  const auto real = sample_path(model, factor, 77);
  for (std::int64_t n : {-2, 0, 3}) {
    const double c = grid.node(n);
    const cdouble want = testsup::simpson_oracle(
        [&](double x) { return evaluate(real, x) / 0.5; }, c - 0.25, c + 0.25);
    CHECK(std::abs(local_average_path(real, scheme, grid, n, 0.0) - want) <
          1e-8);
  }
}

TEST_CASE("wks_truncated: interpolation and missing values") {
  const SamplingGrid grid(2.0);
  std::map<std::int64_t, cdouble> values;
  for (std::int64_t n = -6; n <= 6; ++n) {
    values[n] = cdouble(std::sin(0.3 * n), std::cos(0.2 * n));
  }
  // at a node, the sum collapses to that node's value
  CHECK(std::abs(wks_truncated(values, grid, grid.node(1), 4) - values[1]) <
        1e-13);
  // constant values at a node give the constant
  std::map<std::int64_t, cdouble> constant;
  for (std::int64_t n = -4; n <= 4; ++n) constant[n] = cdouble(2.5, -1.0);
  CHECK(std::abs(wks_truncated(constant, grid, 0.0, 4) - cdouble(2.5, -1.0)) ==
        0.0);

  std::map<std::int64_t, cdouble> sparse{{0, cdouble(1.0, 0.0)}};
  CHECK_THROWS_AS(wks_truncated(sparse, grid, 0.0, 2), ValidationError);
}

TEST_CASE("wks_truncated: deterministic tail for sin(x)/x") {
  // f(x) = sin(x)/x has type gamma = 1 and sup |f| = 1; compare a small
  // truncation against a high-N reference.
  const SamplingGrid grid(kPi);
  const double t = 0.3;
  const auto f = [](double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; };
  const auto partial = [&](int N) {
    cdouble acc(0.0, 0.0);
    for (std::int64_t n : index_window(grid, t, N)) {
      acc += cdouble(f(grid.node(n)), 0.0) * sinc_term(grid, t, n);
    }
    return acc;
  };
  const cdouble y64 = partial(64);
  const cdouble y4096 = partial(4096);
  CHECK(std::abs(y64 - y4096) <
        l0_deterministic(grid, 1.0, 1.0, t) / 64.0);
}

TEST_CASE("avg_truncated: degeneracy, node exactness, linearity") {
  const auto model = testsup::reference_model();
  const SamplingGrid grid(2.0);
  const auto factor = factorize(model->measure());
  const auto real = sample_path(model, factor, 5);

  // point scheme equals the truncated WKS sum of exact samples
  std::map<std::int64_t, cdouble> samples;
  for (std::int64_t n : index_window(grid, 0.7, 8)) {
    samples[n] = evaluate(real, grid.node(n));
  }
  CHECK(std::abs(avg_truncated(real, AveragingScheme::point(), grid, 0.7, 8) -
                 wks_truncated(samples, grid, 0.7, 8)) < 1e-15);

  // node exactness of point reconstruction (small N keeps dust below ulp)
  for (int m = -1; m <= 1; ++m) {
    const double t = grid.node(m);
    const cdouble recon =
        avg_truncated(real, AveragingScheme::point(), grid, t, 4);
    CHECK(std::abs(recon - evaluate(real, t)) <
          1e-13 * (1.0 + std::abs(evaluate(real, t))));
  }

  // constant process at a node: exact recovery (Remark-2 style witness)
  const auto cmodel = testsup::constant_model();
  const auto cpath = sample_path(cmodel, factorize(cmodel->measure()), 21);
  CHECK(avg_truncated(cpath, AveragingScheme::point(), grid, grid.node(1), 4) ==
        cpath.amplitudes[0]);

  // linearity in the amplitudes
  const auto scheme = AveragingScheme::triangular(0.2);
  const cdouble alpha(1.7, -0.4);
  Realization scaled{model, alpha * real.amplitudes};
  CHECK(std::abs(avg_truncated(scaled, scheme, grid, 0.9, 12) -
                 alpha * avg_truncated(real, scheme, grid, 0.9, 12)) < 1e-12);

  const SamplingGrid narrow(0.5);
  CHECK_THROWS_AS(avg_truncated(real, scheme, narrow, 0.9, 12),
                  ValidationError);
}

TEST_CASE("error_coefficients: identities") {
  const auto model = testsup::reference_model();
  const SamplingGrid grid(2.0);
  const auto scheme = AveragingScheme::uniform(0.2);

  // zero-lambda node: g_k = 1 - sum sinc, independent of the scheme
  Eigen::MatrixXcd one(1, 1);
  one(0, 0) = 1.0;
  const ProcessModel zmodel(KernelFunction::fourier(),
                            SpectralMeasure({0.0}, one));
  const double t = 0.9;
  const int N = 10;
  double sinc_sum = 0.0;
  for (std::int64_t n : index_window(grid, t, N)) {
    sinc_sum += sinc_term(grid, t, n);
  }
  const auto g_point =
      error_coefficients(zmodel, AveragingScheme::point(), grid, t, N);
  const auto g_avg = error_coefficients(zmodel, scheme, grid, t, N);
  CHECK(std::abs(g_point[0] - cdouble(1.0 - sinc_sum, 0.0)) < 1e-15);
  CHECK(std::abs(g_avg[0] - g_point[0]) < 1e-15);

  // point scheme at an exact node with small N: identically zero
  const auto witness =
      error_coefficients(zmodel, AveragingScheme::point(), grid, grid.node(1), 4);
  CHECK(witness[0] == cdouble(0.0, 0.0));

  // realization identity: xi(t) - A = <g, Z> for every draw
  const auto factor = factorize(model->measure());
  const auto g = error_coefficients(*model, scheme, grid, t, N);
  for (int i = 0; i < 10; ++i) {
    const auto real = sample_path(model, factor, counter_hash(808, i));
    const cdouble direct =
        evaluate(real, t) - avg_truncated(real, scheme, grid, t, N);
    cdouble via_g(0.0, 0.0);
    for (int k = 0; k < 4; ++k) via_g += g[k] * real.amplitudes[k];
    CHECK(std::abs(direct - via_g) < 1e-10);
  }
}

TEST_CASE("exact_mse: degenerate and generic cases") {
  const SamplingGrid grid(2.0);
  Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(2, 2);
  const ProcessModel zmodel(KernelFunction::fourier(),
                            SpectralMeasure({-1.0, 1.0}, zero));
  CHECK(exact_mse(zmodel, AveragingScheme::point(), grid, 0.4, 8) == 0.0);

  // sharpness witness: exact zero at a node with point sampling
  const auto cmodel = testsup::constant_model();
  for (int m = 0; m <= 2; ++m) {
    CHECK(exact_mse(*cmodel, AveragingScheme::point(), grid, grid.node(m), 4) ==
          0.0);
  }

  // agreement with Monte Carlo (the statistical oracle)
  const auto model = testsup::reference_model();
  const auto scheme = AveragingScheme::uniform(0.15);
  const double t = 1.21;
  const int N = 12;
  const double exact = exact_mse(*model, scheme, grid, t, N);
  const auto mc = monte_carlo_mse(model, scheme, grid, t, N, 10000, 31337);
  CHECK(std::abs(mc.estimate - exact) <= 3.0 * mc.std_error);
}

TEST_CASE("exact_mse: triangle decomposition inequality") {
  const auto model = testsup::reference_model();
  const SamplingGrid grid(2.0);
  const auto scheme = AveragingScheme::uniform(0.3);
  for (int i = 0; i < 20; ++i) {
    const double t = -3.0 + 6.0 * uniform_halfopen(91, i);
    const int N = 4 + static_cast<int>(counter_hash(92, i) % 60);
    const double total = exact_mse(*model, scheme, grid, t, N);
    const double point_part =
        exact_mse(*model, AveragingScheme::point(), grid, t, N);
    const double gap_part = exact_gap_mse(*model, scheme, grid, t, N);
    CHECK(total <= 2.0 * point_part + 2.0 * gap_part + 1e-12);
  }
}

TEST_CASE("exact_mse: parallel equals serial bit-for-bit") {
  const auto model = testsup::reference_model();
  const SamplingGrid grid(2.0);
  for (const auto& scheme :
       {AveragingScheme::point(), AveragingScheme::uniform(0.2)}) {
    for (const double t : {0.37, 2.03}) {
      for (const int N : {8, 64}) {
        CHECK(exact_mse(*model, scheme, grid, t, N) ==
              serial::exact_mse(*model, scheme, grid, t, N));
        CHECK(error_coefficients(*model, scheme, grid, t, N) ==
              serial::error_coefficients(*model, scheme, grid, t, N));
      }
    }
  }
}

TEST_CASE("quadratic form rejects broken vectors") {
  const auto model = testsup::reference_model();
  Eigen::VectorXcd wrong(2);
  wrong << cdouble(1, 0), cdouble(0, 1);
  CHECK_THROWS_AS(spectral_quadratic_form(*model, wrong), ValidationError);
}
