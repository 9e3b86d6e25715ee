#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "comet/correlate.hpp"

namespace {

void BM_Pearson(benchmark::State& state) {
  std::mt19937_64 gen(19);
  std::normal_distribution<double> normal(10.0, 57.0);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = normal(gen);
    y[i] = 0.3 * x[i] + normal(gen);
  }
  for (auto _ : state) benchmark::DoNotOptimize(comet::pearson(x, y));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_Pearson)->Arg(1000)->Arg(11573)->Arg(100000);
