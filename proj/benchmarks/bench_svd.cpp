#include <benchmark/benchmark.h>

#include "htc/matrix.hpp"
#include "htc/random.hpp"
#include "htc/svd.hpp"

namespace {

htc::Matrix gaussian_matrix(std::size_t n) {
  htc::Engine rng({3, n});
  htc::Matrix m(n, n);
  for (double& v : m.data()) v = rng.normal();
  return m;
}

void BM_JacobiSvd(benchmark::State& state) {
  const auto m = gaussian_matrix(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(htc::jacobi_svd(m));
  }
}
BENCHMARK(BM_JacobiSvd)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_SymmetricEigen(benchmark::State& state) {
  const auto m = gaussian_matrix(state.range(0));
  const auto g = htc::gram(m);
  for (auto _ : state) {
    auto copy = g;
    benchmark::DoNotOptimize(htc::symmetric_eigenvalues(std::move(copy)));
  }
}
BENCHMARK(BM_SymmetricEigen)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace
