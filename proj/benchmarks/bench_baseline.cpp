#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "comet/baseline.hpp"

namespace {

std::vector<std::string> random_words(std::size_t count, std::mt19937_64& gen) {
  static const char* pool[] = {"today", "work",  "friend", "dog",   "feel", "happy",
                               "sad",   "tree",  "home",   "think", "life", "support",
                               "hope",  "story", "school", "time"};
  std::vector<std::string> words(count);
  for (auto& word : words) word = pool[gen() % (sizeof(pool) / sizeof(pool[0]))];
  return words;
}

void BM_TokenizeFeaturize(benchmark::State& state) {
  std::mt19937_64 gen(3);
  std::string text;
  for (const auto& word : random_words(static_cast<std::size_t>(state.range(0)), gen)) {
    text += word;
    text += ' ';
  }
  for (auto _ : state) {
    auto vec = comet::featurize(comet::tokenize(text), 2);
    benchmark::DoNotOptimize(vec);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_TrainEpochs(benchmark::State& state) {
  std::mt19937_64 gen(4);
  std::vector<comet::TrainExample> examples(static_cast<std::size_t>(state.range(0)));
  for (auto& ex : examples) {
    ex.features = comet::featurize(random_words(12, gen), 2);
    ex.target = gen() % 2;
  }
  comet::TrainConfig config;
  config.epochs = 5;
  config.seed = 11;
  for (auto _ : state) {
    auto result = comet::train(examples, config, "bench");
    benchmark::DoNotOptimize(result.model.bias);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * config.epochs);
}

void BM_PredictProba(benchmark::State& state) {
  std::mt19937_64 gen(5);
  comet::LinearModel model;
  model.weights.assign(comet::kFeatureDim, 0.0);
  for (int i = 0; i < 4096; ++i)
    model.weights[gen() % comet::kFeatureDim] = 0.01 * static_cast<double>(gen() % 100);
  auto vec = comet::featurize(random_words(14, gen), 2);
  for (auto _ : state) benchmark::DoNotOptimize(comet::predict_proba(model, vec));
}

}  // namespace

BENCHMARK(BM_TokenizeFeaturize)->Arg(15)->Arg(150);
BENCHMARK(BM_TrainEpochs)->Arg(180)->Arg(2000);
BENCHMARK(BM_PredictProba);
