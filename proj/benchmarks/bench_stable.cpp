#include <benchmark/benchmark.h>

#include "htc/stable.hpp"

namespace {

void BM_SampleSas(benchmark::State& state) {
  const double alpha = state.range(0) / 100.0;
  htc::Engine rng({1, 2});
  const htc::StableParams params{alpha, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(htc::sample_sas_one(params, rng));
  }
}
BENCHMARK(BM_SampleSas)->Arg(100)->Arg(150)->Arg(195)->Arg(200);

void BM_SamplePositiveStable(benchmark::State& state) {
  htc::Engine rng({1, 3});
  for (auto _ : state) {
    benchmark::DoNotOptimize(htc::sample_positive_stable_one(0.8, rng));
  }
}
BENCHMARK(BM_SamplePositiveStable);

void BM_SampleElliptic(benchmark::State& state) {
  const std::size_t dim = state.range(0);
  htc::Engine rng({1, 4});
  const htc::EllipticStableParams params{1.5, dim};
  for (auto _ : state) {
    benchmark::DoNotOptimize(htc::sample_elliptic_sas(params, 1, rng));
  }
}
BENCHMARK(BM_SampleElliptic)->Arg(16)->Arg(256);

}  // namespace
