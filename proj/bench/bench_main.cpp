// Serial reference vs OpenMP kernels on the 4-node reference model.

#include <benchmark/benchmark.h>

#include "avgsamp/experiment.hpp"
#include "avgsamp/reference.hpp"
#include "avgsamp/rng.hpp"

namespace {

using namespace avgsamp;

std::shared_ptr<const ProcessModel> bench_model() {
  const std::vector<double> nodes{-1.0, -0.3, 0.5, 1.0};
  Eigen::MatrixXcd a(4, 4), f(4, 4);
  for (Eigen::Index j = 0; j < 4; ++j) {
    for (Eigen::Index i = 0; i < 4; ++i) {
      a(j, i) = complex_gaussian(7, static_cast<std::uint64_t>(4 * j + i));
    }
  }
  for (Eigen::Index j = 0; j < 4; ++j) {
    for (Eigen::Index k = j; k < 4; ++k) {
      cdouble acc(0.0, 0.0);
      for (Eigen::Index i = 0; i < 4; ++i) acc += a(j, i) * std::conj(a(k, i));
      f(j, k) = acc / 4.0;
      f(k, j) = std::conj(f(j, k));
    }
  }
  return std::make_shared<const ProcessModel>(KernelFunction::fourier(),
                                              SpectralMeasure(nodes, f));
}

void BM_monte_carlo_serial(benchmark::State& state) {
  const auto model = bench_model();
  const SamplingGrid grid(2.0);
  const auto scheme = AveragingScheme::uniform(0.1);
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto r = serial::monte_carlo_mse(model, scheme, grid, 0.83, N, 2000, 11);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_monte_carlo_serial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_monte_carlo_parallel(benchmark::State& state) {
  const auto model = bench_model();
  const SamplingGrid grid(2.0);
  const auto scheme = AveragingScheme::uniform(0.1);
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto r = monte_carlo_mse(model, scheme, grid, 0.83, N, 2000, 11);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_monte_carlo_parallel)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_exact_mse_serial(benchmark::State& state) {
  const auto model = bench_model();
  const SamplingGrid grid(2.0);
  const auto scheme = AveragingScheme::uniform(0.1);
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        serial::exact_mse(*model, scheme, grid, 0.83, N));
  }
}
BENCHMARK(BM_exact_mse_serial)->Arg(128)->Arg(512)->Unit(benchmark::kMicrosecond);

void BM_exact_mse_parallel(benchmark::State& state) {
  const auto model = bench_model();
  const SamplingGrid grid(2.0);
  const auto scheme = AveragingScheme::uniform(0.1);
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_mse(*model, scheme, grid, 0.83, N));
  }
}
BENCHMARK(BM_exact_mse_parallel)->Arg(128)->Arg(512)->Unit(benchmark::kMicrosecond);

void BM_bounds_sweep(benchmark::State& state) {
  nlohmann::json doc;
  doc["model"] = model_to_json(*bench_model());
  doc["w"] = 2.0;
  doc["scheme"] = {{"family", "uniform"}, {"sigma", 0.1}};
  doc["N"] = {8, 16, 32, 64, 128, 256, 512};
  const auto cfg = ExperimentConfig::from_json(doc);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_bounds(cfg));
  }
}
BENCHMARK(BM_bounds_sweep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
