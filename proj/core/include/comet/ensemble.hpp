#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "comet/labels.hpp"
#include "comet/metrics.hpp"

namespace comet {

using LabelProbs = std::array<double, kLabelCount>;

// Per-model, per-comment, per-label probabilities. Model and comment order
// is first-seen order; every model must cover every comment.
class PredictionMatrix {
 public:
  // Throws DataError on out-of-range probabilities or duplicate cells.
  void add(std::string_view model, std::string_view comment, const LabelProbs& probs);

  // Throws DataError when any (model, comment) cell is missing.
  void validate() const;

  const std::vector<std::string>& models() const { return model_ids_; }
  const std::vector<std::string>& comments() const { return comment_ids_; }

  std::size_t model_index(std::string_view model) const;  // throws UsageError if unknown
  std::optional<std::size_t> comment_index(std::string_view comment) const;

  bool has(std::size_t model, std::size_t comment) const;
  const LabelProbs& probs(std::size_t model, std::size_t comment) const;
  double prob(std::size_t model, std::size_t comment, std::size_t label) const;

  // JSON Lines, one object per (model, comment):
  //   {"model": str, "id": str, "probs": {label name: number, ...}}
  static PredictionMatrix from_jsonl(std::string_view text,
                                     std::string_view filename = "<predictions>");
  std::string to_jsonl() const;

 private:
  std::vector<std::string> model_ids_;
  std::vector<std::string> comment_ids_;
  std::unordered_map<std::string, std::size_t> model_index_;
  std::unordered_map<std::string, std::size_t> comment_index_;
  std::vector<std::vector<LabelProbs>> cells_;     // [model][comment]
  std::vector<std::vector<std::uint8_t>> filled_;  // parallel to cells_
};

struct WeightPair {
  double w_a = 1.0;
  double w_b = 0.0;
};

// Validates both weights in [0, 1] and w_a + w_b = 1 within 1e-12.
WeightPair make_weight_pair(double w_a, double w_b);

struct EnsembleConfig {
  std::string name;
  std::array<WeightPair, kLabelCount> weights;  // one pair per label, label order
  double threshold = 0.5;
};

// Weighted average of two probabilities; the result is clamped into the
// interval spanned by its inputs.
double combine(double p_a, double p_b, const WeightPair& w);

// 1 if p >= threshold, ties decide positive.
std::uint8_t decide(double p, double threshold);

// The five preset weight configurations, "Model 1" .. "Model 5".
std::vector<EnsembleConfig> preset_configs();
EnsembleConfig preset_config(std::string_view name);  // throws UsageError if unknown

// Per comment and label: decide(combine(p_a, p_b, pair), threshold).
// The matrix must cover every comment for both named models.
std::vector<LabelSet> ensemble_predict(const PredictionMatrix& matrix,
                                       const EnsembleConfig& config,
                                       std::string_view model_a,
                                       std::string_view model_b);

enum class Objective { Accuracy, Precision1, Recall1, F1, AccAndF1 };

Objective objective_from_name(std::string_view name);  // throws UsageError
std::string_view objective_name(Objective objective);
double objective_value(const MetricReport& report, Objective objective);

using GoldLabels = std::unordered_map<std::string, LabelSet>;

struct GridSearchResult {
  EnsembleConfig config;
  std::array<double, kLabelCount> objective{};
  std::array<MetricReport, kLabelCount> report;  // full metrics at the optimum
  std::size_t candidates = 0;                    // grid points evaluated per label
};

// Per label independently, evaluates every pair (w, 1-w) on the grid
// w in {0, step, ..., 1}. Ties break toward larger f1, then toward the
// smaller weight on model B.
GridSearchResult grid_search(const PredictionMatrix& matrix,
                             const GoldLabels& gold,
                             std::string_view model_a,
                             std::string_view model_b,
                             double step = 0.1,
                             Objective objective = Objective::AccAndF1,
                             double threshold = 0.5);

// Run file ("System Run"): comma-separated, columns id + six 0/1 labels.
std::string run_to_csv(std::span<const std::string> comment_ids,
                       std::span<const LabelSet> predictions);

std::string ensemble_config_to_json(const EnsembleConfig& config);
EnsembleConfig ensemble_config_from_json(std::string_view text,
                                         std::string_view filename = "<config>");

}  // namespace comet
