#include <benchmark/benchmark.h>

#include "htc/experiments.hpp"
#include "htc/network.hpp"

namespace {

void BM_SgdStep(benchmark::State& state) {
  const htc::Dataset data = htc::make_gaussian_mixture(1024, 2, 3.0, {4, 0});
  htc::SgdConfig cfg;
  cfg.eta = 0.05;
  cfg.batch = state.range(0);
  cfg.seed = {4, 1};
  const std::vector<std::size_t> arch{2, 64, 64, 2};
  htc::SgdDriver driver(htc::init_fcn(arch, {4, 2}), data, cfg);
  for (auto _ : state) {
    driver.run(1);
  }
}
BENCHMARK(BM_SgdStep)->Arg(1)->Arg(16)->Arg(64);

void BM_LinearRegressionRun(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        htc::train_linear_regression({100, 1000, 1.0}, 0.01, 1, 1000, 100, {4, 3}));
  }
}
BENCHMARK(BM_LinearRegressionRun)->Unit(benchmark::kMillisecond);

}  // namespace
