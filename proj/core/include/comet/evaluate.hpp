#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "comet/corpus.hpp"
#include "comet/ensemble.hpp"
#include "comet/metrics.hpp"

namespace comet {

struct FoldAssignment {
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::unordered_map<std::string, std::size_t> fold_of;

  std::size_t fold(std::string_view id) const;  // throws UsageError on unknown id
};

// Deterministic: ids are sorted, shuffled with the seeded generator, then
// dealt round-robin. Fold sizes differ by at most one.
FoldAssignment kfold_split(std::span<const std::string> ids, std::size_t k,
                           std::uint64_t seed);

// Same dealing, but ids with stratum = 1 are spread across folds before the
// rest; useful for very low-prevalence labels.
FoldAssignment kfold_split_stratified(std::span<const std::string> ids,
                                      std::span<const std::uint8_t> strata,
                                      std::size_t k, std::uint64_t seed);

// Trains on `train` and returns per-record label probabilities for the two
// ensemble roles, aligned with `test`.
using Trainer = std::function<std::pair<std::vector<LabelProbs>, std::vector<LabelProbs>>(
    std::span<const CommentRecord> train, std::span<const CommentRecord> test)>;

struct TrainConfig;

// Two hashed bag-of-words baselines standing in for the base-model pair,
// differing in seed and n-gram order.
Trainer make_baseline_trainer(const TrainConfig& config_a, const TrainConfig& config_b);

struct FoldReport {
  std::size_t fold = 0;
  std::array<MetricReport, kLabelCount> per_label;
  MetricReport label_averaged;
};

struct CrossValidationReport {
  std::vector<FoldReport> folds;
  MetricReport mean;  // unweighted mean of the folds' label-averaged reports
};

// Per fold: train on the other k-1 folds, predict the held-out fold, score
// per label. Records are processed in id order, so the result does not
// depend on input order.
CrossValidationReport cross_validate(const std::vector<CommentRecord>& records,
                                     const Trainer& trainer,
                                     const EnsembleConfig& config,
                                     const FoldAssignment& folds);

struct ComparisonRow {
  std::string name;
  MetricReport label_averaged;
  std::array<MetricReport, kLabelCount> per_label;
};

// One row per configuration, sorted by label-averaged Acc&F1, best first
// (stable for ties).
struct ComparisonTable {
  std::vector<ComparisonRow> rows;
};

ComparisonTable compare_models(const PredictionMatrix& matrix,
                               const GoldLabels& gold,
                               std::span<const EnsembleConfig> configs,
                               std::string_view model_a,
                               std::string_view model_b);

// Gold labels keyed by comment id; throws DataError on an unlabeled record.
GoldLabels gold_from_records(const std::vector<CommentRecord>& records);

}  // namespace comet
