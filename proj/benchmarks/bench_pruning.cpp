#include <benchmark/benchmark.h>

#include <vector>

#include "htc/pruning.hpp"
#include "htc/stable.hpp"

namespace {

std::vector<double> heavy_vector(std::size_t d) {
  htc::Engine rng({2, d});
  const htc::StableParams params{1.6, 1.0};
  std::vector<double> x(d);
  for (double& v : x) v = htc::sample_sas_one(params, rng);
  return x;
}

void BM_KBest(benchmark::State& state) {
  const auto x = heavy_vector(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(htc::k_best(x, 0.1 * x.size()));
  }
}
BENCHMARK(BM_KBest)->Arg(10000)->Arg(100000)->Arg(1000000);

void BM_MinKappa(benchmark::State& state) {
  const auto x = heavy_vector(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(htc::min_kappa(x, 0.1, 2.0));
  }
}
BENCHMARK(BM_MinKappa)->Arg(10000)->Arg(100000)->Arg(1000000);

}  // namespace
