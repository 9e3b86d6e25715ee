#include <benchmark/benchmark.h>

#include <random>

#include "comet/ensemble.hpp"

namespace {

comet::PredictionMatrix random_matrix(std::size_t comments) {
  std::mt19937_64 gen(7);
  auto uniform = [&] { return static_cast<double>(gen()) / static_cast<double>(UINT64_MAX); };
  comet::PredictionMatrix matrix;
  for (std::size_t c = 0; c < comments; ++c) {
    comet::LabelProbs pa{}, pb{};
    for (std::size_t l = 0; l < comet::kLabelCount; ++l) {
      pa[l] = uniform();
      pb[l] = uniform();
    }
    matrix.add("a", "c" + std::to_string(c), pa);
    matrix.add("b", "c" + std::to_string(c), pb);
  }
  return matrix;
}

comet::GoldLabels random_gold(const comet::PredictionMatrix& matrix) {
  std::mt19937_64 gen(8);
  comet::GoldLabels gold;
  for (const std::string& id : matrix.comments()) {
    comet::LabelSet labels;
    for (std::size_t l = 0; l < comet::kLabelCount; ++l) labels[l] = gen() % 2;
    gold.emplace(id, labels);
  }
  return gold;
}

void BM_EnsemblePredict(benchmark::State& state) {
  const auto matrix = random_matrix(static_cast<std::size_t>(state.range(0)));
  const auto config = comet::preset_config("Model 5");
  for (auto _ : state) {
    auto predictions = comet::ensemble_predict(matrix, config, "a", "b");
    benchmark::DoNotOptimize(predictions);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_GridSearch(benchmark::State& state) {
  const auto matrix = random_matrix(static_cast<std::size_t>(state.range(0)));
  const auto gold = random_gold(matrix);
  for (auto _ : state) {
    auto result = comet::grid_search(matrix, gold, "a", "b");
    benchmark::DoNotOptimize(result);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_MatrixJsonlRoundTrip(benchmark::State& state) {
  const auto matrix = random_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto text = matrix.to_jsonl();
    auto parsed = comet::PredictionMatrix::from_jsonl(text);
    benchmark::DoNotOptimize(parsed);
  }
}

}  // namespace

BENCHMARK(BM_EnsemblePredict)->Arg(200)->Arg(11573);
BENCHMARK(BM_GridSearch)->Arg(200)->Arg(2000);
BENCHMARK(BM_MatrixJsonlRoundTrip)->Arg(200);
