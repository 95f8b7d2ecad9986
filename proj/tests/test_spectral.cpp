#include <cmath>
#include <doctest.h>
#include <nlohmann/json.hpp>

#include "avgsamp/rng.hpp"
#include "avgsamp/spectral.hpp"
#include "test_support.hpp"

using namespace avgsamp;

namespace {

ProcessModel diagonal_model(std::vector<double> nodes,
                            std::vector<double> weights) {
  const auto m = static_cast<Eigen::Index>(nodes.size());
  Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(m, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    f(k, k) = weights[static_cast<std::size_t>(k)];
  }
  return {KernelFunction::fourier(), SpectralMeasure(std::move(nodes), std::move(f))};
}

}  // namespace

TEST_CASE("measure validation") {
  Eigen::MatrixXcd bad(2, 2);
  bad << cdouble(1, 0), cdouble(0.5, 0.1), cdouble(0.5, 0.2), cdouble(1, 0);
  CHECK_THROWS_AS(SpectralMeasure({-1.0, 1.0}, bad), ValidationError);

  Eigen::MatrixXcd indefinite(2, 2);
  indefinite << cdouble(1, 0), cdouble(2, 0), cdouble(2, 0), cdouble(1, 0);
  CHECK_THROWS_AS(SpectralMeasure({-1.0, 1.0}, indefinite), NumericalError);

  Eigen::MatrixXcd ok = Eigen::MatrixXcd::Identity(2, 2);
  CHECK_THROWS_AS(SpectralMeasure({1.0, 1.0}, ok), ValidationError);  // order
  CHECK_THROWS_AS(SpectralMeasure({1.0, -1.0}, ok), ValidationError);
  CHECK_NOTHROW(SpectralMeasure({-1.0, 1.0}, ok));

  // PSD tolerance: a tiny negative eigenvalue within -1e-10*scale passes
  Eigen::MatrixXcd dust(2, 2);
  dust << cdouble(1.0, 0), cdouble(1.0 + 4e-11, 0), cdouble(1.0 + 4e-11, 0),
      cdouble(1.0, 0);
  CHECK_NOTHROW(SpectralMeasure({-1.0, 1.0}, dust));
}

TEST_CASE("model gamma and stationarity") {
  const auto model = diagonal_model({-1.5, 0.25, 2.0}, {1.0, 2.0, 0.5});
  CHECK(model.gamma() == 2.0);
  CHECK(model.stationary());
  const auto ref = testsup::reference_model();
  CHECK(ref->gamma() == 1.0);
  CHECK(!ref->stationary());
}

TEST_CASE("covariance: stationary reduction and Hermitian symmetry") {
  const auto model = diagonal_model({-1.0, 0.3, 0.9}, {0.5, 1.25, 0.25});
  const double total = 0.5 + 1.25 + 0.25;
  CHECK(covariance(model, 0.7, 0.7).real() == doctest::Approx(total));
  CHECK(covariance(model, 0.7, 0.7).imag() == doctest::Approx(0.0));

  // depends on t - s only
  for (int i = 0; i < 50; ++i) {
    const double t = -4.0 + 8.0 * uniform_halfopen(61, 3 * i);
    const double s = -4.0 + 8.0 * uniform_halfopen(61, 3 * i + 1);
    const double h = -2.0 + 4.0 * uniform_halfopen(61, 3 * i + 2);
    CHECK(std::abs(covariance(model, t, s) - covariance(model, t + h, s + h)) <
          1e-10);
  }

  const auto ref = testsup::reference_model();
  for (int i = 0; i < 50; ++i) {
    const double t = -4.0 + 8.0 * uniform_halfopen(62, 2 * i);
    const double s = -4.0 + 8.0 * uniform_halfopen(62, 2 * i + 1);
    CHECK(std::abs(covariance(*ref, t, s) - std::conj(covariance(*ref, s, t))) <
          1e-12);
    CHECK(covariance(*ref, t, t).real() >= -1e-10);
    CHECK(std::abs(covariance(*ref, t, t).imag()) < 1e-12);
  }
}

TEST_CASE("covariance vs brute-force oracle") {
  const auto measure = testsup::random_psd_measure({-0.8, 0.1, 1.3}, 99);
  const ProcessModel model(KernelFunction::fourier(), measure);
  for (int i = 0; i < 25; ++i) {
    const double t = -3.0 + 6.0 * uniform_halfopen(63, 2 * i);
    const double s = -3.0 + 6.0 * uniform_halfopen(63, 2 * i + 1);
    cdouble brute(0.0, 0.0);
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        brute += std::polar(1.0, t * measure.nodes()[j]) *
                 std::polar(1.0, -s * measure.nodes()[k]) *
                 measure.masses()(j, k);
      }
    }
    CHECK(std::abs(covariance(model, t, s) - brute) < 1e-12);
  }
}

TEST_CASE("mixed derivative: closed cases and finite differences") {
  const auto model = diagonal_model({-1.0, 0.3, 0.9}, {0.5, 1.25, 0.25});
  const double expected = 0.5 * 1.0 + 1.25 * 0.09 + 0.25 * 0.81;
  CHECK(covariance_mixed_deriv(model, 0.4, 0.4).real() ==
        doctest::Approx(expected).epsilon(1e-12));

  const auto constant = testsup::constant_model();
  CHECK(std::abs(covariance_mixed_deriv(*constant, 1.3, -0.2)) == 0.0);

  const auto ref = testsup::reference_model();
  const double h = 1e-4;
  for (int i = 0; i < 10; ++i) {
    const double t = -2.0 + 4.0 * uniform_halfopen(64, 2 * i);
    const double s = -2.0 + 4.0 * uniform_halfopen(64, 2 * i + 1);
    const cdouble fd = (covariance(*ref, t + h, s + h) -
                        covariance(*ref, t + h, s - h) -
                        covariance(*ref, t - h, s + h) +
                        covariance(*ref, t - h, s - h)) /
                       (4.0 * h * h);
    const cdouble an = covariance_mixed_deriv(*ref, t, s);
    CHECK(std::abs(fd - an) <= 1e-5 * (1.0 + std::abs(an)));
  }

  const auto no_deriv = KernelFunction::custom(
      [](double t, double lam) { return std::polar(1.0, t * lam); }, nullptr,
      [](double lam) { return std::abs(lam); }, 1.0, 1.0, 0.0);
  const ProcessModel custom(no_deriv, testsup::random_psd_measure({0.5}, 3));
  CHECK_THROWS_AS(covariance_mixed_deriv(custom, 0.0, 0.0), ValidationError);
}

TEST_CASE("b2_sup: triangle majorant vs grid estimate") {
  const auto model = diagonal_model({-1.0, 0.3, 0.9}, {0.5, 1.25, 0.25});
  const double expected = 0.5 + 1.25 * 0.09 + 0.25 * 0.81;
  CHECK(b2_sup(model, B2Method::triangle) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(b2_sup(model, B2Method::grid) ==
        doctest::Approx(expected).epsilon(1e-9));

  const auto single = diagonal_model({2.0}, {0.5});
  CHECK(b2_sup(single, B2Method::triangle) == doctest::Approx(2.0));

  for (std::uint64_t seed : {4u, 5u, 6u}) {
    const ProcessModel m(KernelFunction::fourier(),
                         testsup::random_psd_measure({-1.2, -0.4, 0.6, 1.1}, seed));
    CHECK(b2_sup(m, B2Method::triangle) >=
          b2_sup(m, B2Method::grid) * (1.0 - 1e-12));
  }

  const std::vector<double> empty;
  CHECK_THROWS_AS(b2_sup(model, std::span<const double>(empty)), ValidationError);
}

TEST_CASE("total variation") {
  Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(2, 2);
  CHECK(total_variation(SpectralMeasure({-1.0, 1.0}, zero)) == 0.0);
  CHECK(total_variation(SpectralMeasure(
            {-1.0, 0.0, 1.0}, Eigen::MatrixXcd::Identity(3, 3))) == 3.0);

  const auto measure = testsup::random_psd_measure({-0.8, 0.1, 1.3}, 123);
  double brute = 0.0;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) brute += std::abs(measure.masses()(j, k));
  }
  CHECK(total_variation(measure) == doctest::Approx(brute).epsilon(1e-15));
}

TEST_CASE("real_process validation") {
  const std::vector<double> sym_nodes{-1.0, 0.0, 1.0};
  Eigen::MatrixXcd f = Eigen::MatrixXcd::Identity(3, 3);
  CHECK_NOTHROW(ProcessModel(KernelFunction::fourier(),
                             SpectralMeasure(sym_nodes, f), true));
  CHECK_THROWS_AS(ProcessModel(KernelFunction::fourier(),
                               SpectralMeasure({-1.0, 0.2, 1.0}, f), true),
                  ValidationError);
  // reflection-asymmetric masses rejected
  Eigen::MatrixXcd g = f;
  g(0, 0) = 2.0;
  CHECK_THROWS_AS(ProcessModel(KernelFunction::fourier(),
                               SpectralMeasure(sym_nodes, g), true),
                  ValidationError);
}

TEST_CASE("model JSON round-trip is bit-exact") {
  auto model = testsup::reference_model(77);
  nlohmann::json doc = model_to_json(*model);
  const std::string once = doc.dump();
  const ProcessModel back = model_from_json(doc);
  const std::string twice = model_to_json(back).dump();
  CHECK(once == twice);
  CHECK(back.gamma() == model->gamma());
  CHECK(back.measure().masses() == model->measure().masses());

  // seed_hint survives
  nlohmann::json with_hint = doc;
  with_hint["seed_hint"] = 12345;
  const ProcessModel hinted = model_from_json(with_hint);
  CHECK(hinted.seed_hint.has_value());
  CHECK(*hinted.seed_hint == 12345);
  CHECK(model_to_json(hinted)["seed_hint"] == 12345);
}

TEST_CASE("model JSON rejects malformed documents") {
  const nlohmann::json good = model_to_json(*testsup::reference_model());
  nlohmann::json bad = good;
  bad.erase("F_im");
  CHECK_THROWS_AS(model_from_json(bad), ValidationError);
  bad = good;
  bad["kernel"] = "bessel";
  CHECK_THROWS_AS(model_from_json(bad), ValidationError);
  bad = good;
  bad["F_re"][0][1] = 100.0;  // breaks Hermitian symmetry
  CHECK_THROWS_AS(model_from_json(bad), ValidationError);
  bad = good;
  // breaks positive semidefiniteness while staying Hermitian
  bad["F_re"][0][0] = -1.0;
  CHECK_THROWS_AS(model_from_json(bad), NumericalError);
}
