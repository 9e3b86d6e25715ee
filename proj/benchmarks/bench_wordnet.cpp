#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "comet/semfeat.hpp"
#include "comet/wordnet.hpp"

namespace {

const comet::SenseTaxonomy& mini_taxonomy() {
  static const comet::SenseTaxonomy tax =
      comet::load_wordnet_dir(std::string(COMET_DATA_DIR) + "/wordnet_mini");
  return tax;
}

void BM_LoadMiniTaxonomy(benchmark::State& state) {
  const std::string dir = std::string(COMET_DATA_DIR) + "/wordnet_mini";
  for (auto _ : state) {
    auto tax = comet::load_wordnet_dir(dir);
    benchmark::DoNotOptimize(tax.size());
  }
}

void BM_PathSimilarity(benchmark::State& state) {
  const auto& tax = mini_taxonomy();
  const comet::SynsetId dog{'n', 5000}, bark{'n', 9000};
  for (auto _ : state) benchmark::DoNotOptimize(comet::path_similarity(dog, bark, tax));
}

void BM_SenseExtremes(benchmark::State& state) {
  const auto& tax = mini_taxonomy();
  const std::vector<std::string> tokens = {"dog", "bark", "tree",  "plant",
                                           "run", "yelp", "sound", "animal"};
  for (auto _ : state) {
    auto extremes = comet::sense_extremes(tokens, tax);
    benchmark::DoNotOptimize(extremes);
  }
}

}  // namespace

BENCHMARK(BM_LoadMiniTaxonomy);
BENCHMARK(BM_PathSimilarity);
BENCHMARK(BM_SenseExtremes);
