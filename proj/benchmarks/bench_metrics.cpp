#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "comet/metrics.hpp"

namespace {

std::pair<std::vector<std::uint8_t>, std::vector<std::uint8_t>> random_pairs(
    std::size_t n) {
  std::mt19937_64 gen(123);
  std::vector<std::uint8_t> pred(n), gold(n);
  for (std::size_t i = 0; i < n; ++i) {
    pred[i] = gen() % 2;
    gold[i] = gen() % 2;
  }
  return {pred, gold};
}

void BM_ConfusionAndMetrics(benchmark::State& state) {
  const auto [pred, gold] = random_pairs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto report = comet::compute_metrics(comet::confusion(pred, gold));
    benchmark::DoNotOptimize(report);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_LabelAverage(benchmark::State& state) {
  std::vector<comet::MetricReport> reports(6, comet::MetricReport{0.8, 0.6, 0.5, 0.54, 0.67});
  for (auto _ : state) {
    auto avg = comet::label_average(reports);
    benchmark::DoNotOptimize(avg);
  }
}

}  // namespace

BENCHMARK(BM_ConfusionAndMetrics)->Arg(200)->Arg(11573);
BENCHMARK(BM_LabelAverage);
