#include "comet/evaluate.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

#include "comet/baseline.hpp"
#include "comet/error.hpp"

namespace comet {

namespace {

// Explicit Fisher-Yates so assignments are reproducible across platforms.
template <typename T>
void seeded_shuffle(std::vector<T>& items, std::mt19937_64& gen) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(gen() % i);
    std::swap(items[i - 1], items[j]);
  }
}

std::vector<std::string> sorted_unique_ids(std::span<const std::string> ids) {
  std::vector<std::string> sorted(ids.begin(), ids.end());
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) throw UsageError("duplicate id '" + *dup + "'");
  return sorted;
}

void check_fold_args(std::size_t n, std::size_t k) {
  if (k < 2) throw UsageError("k must be at least 2");
  if (n < k)
    throw UsageError("need at least k ids, got " + std::to_string(n) + " for k=" +
                     std::to_string(k));
}

}  // namespace

std::size_t FoldAssignment::fold(std::string_view id) const {
  auto it = fold_of.find(std::string(id));
  if (it == fold_of.end())
    throw UsageError("id '" + std::string(id) + "' has no fold assignment");
  return it->second;
}

FoldAssignment kfold_split(std::span<const std::string> ids, std::size_t k,
                           std::uint64_t seed) {
  check_fold_args(ids.size(), k);
  std::vector<std::string> order = sorted_unique_ids(ids);
  std::mt19937_64 gen(seed);
  seeded_shuffle(order, gen);

  FoldAssignment assignment;
  assignment.k = k;
  assignment.seed = seed;
  for (std::size_t i = 0; i < order.size(); ++i)
    assignment.fold_of.emplace(std::move(order[i]), i % k);
  return assignment;
}

FoldAssignment kfold_split_stratified(std::span<const std::string> ids,
                                      std::span<const std::uint8_t> strata,
                                      std::size_t k, std::uint64_t seed) {
  if (ids.size() != strata.size())
    throw UsageError("ids/strata length mismatch");
  check_fold_args(ids.size(), k);

  std::vector<std::pair<std::string, std::uint8_t>> tagged(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) tagged[i] = {ids[i], strata[i]};
  std::sort(tagged.begin(), tagged.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < tagged.size(); ++i)
    if (tagged[i].first == tagged[i - 1].first)
      throw UsageError("duplicate id '" + tagged[i].first + "'");

  std::vector<std::string> positives, negatives;
  for (auto& [id, stratum] : tagged)
    (stratum ? positives : negatives).push_back(std::move(id));

  std::mt19937_64 gen(seed);
  seeded_shuffle(positives, gen);
  seeded_shuffle(negatives, gen);

  FoldAssignment assignment;
  assignment.k = k;
  assignment.seed = seed;
  std::size_t cursor = 0;
  for (auto* group : {&positives, &negatives})
    for (std::string& id : *group) assignment.fold_of.emplace(std::move(id), cursor++ % k);
  return assignment;
}

CrossValidationReport cross_validate(const std::vector<CommentRecord>& records,
                                     const Trainer& trainer,
                                     const EnsembleConfig& config,
                                     const FoldAssignment& folds) {
  if (records.empty()) throw UsageError("no records");
  if (folds.k < 2) throw UsageError("fold assignment has k < 2");

  std::vector<const CommentRecord*> ordered;
  ordered.reserve(records.size());
  for (const CommentRecord& rec : records) ordered.push_back(&rec);
  std::sort(ordered.begin(), ordered.end(),
            [](const CommentRecord* a, const CommentRecord* b) { return a->id < b->id; });

  std::vector<std::size_t> fold_index(ordered.size());
  for (std::size_t i = 0; i < ordered.size(); ++i)
    fold_index[i] = folds.fold(ordered[i]->id);

  CrossValidationReport report;
  for (std::size_t f = 0; f < folds.k; ++f) {
    std::vector<CommentRecord> train_set, test_set;
    for (std::size_t i = 0; i < ordered.size(); ++i)
      (fold_index[i] == f ? test_set : train_set).push_back(*ordered[i]);
    if (test_set.empty())
      throw UsageError("fold " + std::to_string(f) + " is empty");

    auto [probs_a, probs_b] = trainer(train_set, test_set);
    if (probs_a.size() != test_set.size() || probs_b.size() != test_set.size())
      throw DataError("trainer returned misaligned predictions");

    FoldReport fold_report;
    fold_report.fold = f;
    for (std::size_t l = 0; l < kLabelCount; ++l) {
      ConfusionCounts counts;
      for (std::size_t i = 0; i < test_set.size(); ++i) {
        if (!test_set[i].labels)
          throw DataError("record '" + test_set[i].id + "' is missing labels");
        std::uint8_t pred = decide(combine(probs_a[i][l], probs_b[i][l], config.weights[l]),
                                   config.threshold);
        std::uint8_t truth = (*test_set[i].labels)[l];
        if (pred) {
          truth ? ++counts.tp : ++counts.fp;
        } else {
          truth ? ++counts.fn : ++counts.tn;
        }
      }
      fold_report.per_label[l] = compute_metrics(counts);
    }
    fold_report.label_averaged = label_average(fold_report.per_label);
    report.folds.push_back(std::move(fold_report));
  }

  MetricReport mean;
  for (const FoldReport& fold : report.folds) {
    mean.accuracy += fold.label_averaged.accuracy;
    mean.precision1 += fold.label_averaged.precision1;
    mean.recall1 += fold.label_averaged.recall1;
    mean.f1 += fold.label_averaged.f1;
    mean.acc_and_f1 += fold.label_averaged.acc_and_f1;
  }
  const double k = static_cast<double>(report.folds.size());
  mean.accuracy /= k;
  mean.precision1 /= k;
  mean.recall1 /= k;
  mean.f1 /= k;
  mean.acc_and_f1 /= k;
  report.mean = mean;
  return report;
}

ComparisonTable compare_models(const PredictionMatrix& matrix, const GoldLabels& gold,
                               std::span<const EnsembleConfig> configs,
                               std::string_view model_a, std::string_view model_b) {
  if (configs.empty()) throw UsageError("no configurations to compare");
  const std::size_t n = matrix.comments().size();
  if (n == 0) throw UsageError("prediction matrix has no comments");

  std::vector<const LabelSet*> gold_rows(n);
  for (std::size_t c = 0; c < n; ++c) {
    auto it = gold.find(matrix.comments()[c]);
    if (it == gold.end())
      throw DataError("missing gold labels for comment '" + matrix.comments()[c] + "'");
    gold_rows[c] = &it->second;
  }

  ComparisonTable table;
  for (const EnsembleConfig& config : configs) {
    std::vector<LabelSet> predictions = ensemble_predict(matrix, config, model_a, model_b);
    ComparisonRow row;
    row.name = config.name;
    for (std::size_t l = 0; l < kLabelCount; ++l) {
      ConfusionCounts counts;
      for (std::size_t c = 0; c < n; ++c) {
        std::uint8_t pred = predictions[c][l];
        std::uint8_t truth = (*gold_rows[c])[l];
        if (pred) {
          truth ? ++counts.tp : ++counts.fp;
        } else {
          truth ? ++counts.fn : ++counts.tn;
        }
      }
      row.per_label[l] = compute_metrics(counts);
    }
    row.label_averaged = label_average(row.per_label);
    table.rows.push_back(std::move(row));
  }

  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const ComparisonRow& a, const ComparisonRow& b) {
                     return a.label_averaged.acc_and_f1 > b.label_averaged.acc_and_f1;
                   });
  return table;
}

Trainer make_baseline_trainer(const TrainConfig& config_a, const TrainConfig& config_b) {
  return [config_a, config_b](std::span<const CommentRecord> train,
                              std::span<const CommentRecord> test) {
    const std::vector<CommentRecord> train_vec(train.begin(), train.end());
    const LabelModels models_a = train_all_labels(train_vec, config_a);
    const LabelModels models_b = train_all_labels(train_vec, config_b);

    auto predict = [&test](const LabelModels& models) {
      std::vector<LabelProbs> out;
      out.reserve(test.size());
      for (const CommentRecord& rec : test) {
        const SparseVector vec =
            featurize(tokenize(rec.text), models.models[0].ngram_order);
        LabelProbs probs{};
        for (std::size_t l = 0; l < kLabelCount; ++l)
          probs[l] = predict_proba(models.models[l], vec);
        out.push_back(probs);
      }
      return out;
    };
    return std::make_pair(predict(models_a), predict(models_b));
  };
}

GoldLabels gold_from_records(const std::vector<CommentRecord>& records) {
  GoldLabels gold;
  gold.reserve(records.size());
  for (const CommentRecord& rec : records) {
    if (!rec.labels) throw DataError("record '" + rec.id + "' is missing labels");
    gold.emplace(rec.id, *rec.labels);
  }
  return gold;
}

}  // namespace comet
