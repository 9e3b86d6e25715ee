#include "comet/correlate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "comet/error.hpp"

namespace comet {

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw UsageError("length mismatch: " + std::to_string(x.size()) + " vs " +
                     std::to_string(y.size()));
  if (x.size() < 2) throw UsageError("need at least 2 samples");

  const double n = static_cast<double>(x.size());
  double sum_x = 0, sum_y = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum_x += x[i];
    sum_y += y[i];
  }
  const double mean_x = sum_x / n;
  const double mean_y = sum_y / n;

  // Shifted two-pass accumulation; stable for scores ranging into the
  // thousands.
  double sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0) throw UndefinedCorrelationError("x has zero variance");
  if (syy == 0.0) throw UndefinedCorrelationError("y has zero variance");

  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::array<CorrelationResult, kLabelCount> correlate_labels(
    const std::vector<CommentRecord>& records) {
  std::vector<double> scores;
  scores.reserve(records.size());
  for (const CommentRecord& rec : records) {
    if (!rec.labels) throw DataError("record '" + rec.id + "' is missing labels");
    scores.push_back(static_cast<double>(rec.score));
  }

  std::array<CorrelationResult, kLabelCount> out;
  for (std::size_t l = 0; l < kLabelCount; ++l) {
    CorrelationResult& result = out[l];
    result.variable = std::string(kLabelNames[l]);
    result.n = records.size();
    result.n_dropped = 0;

    std::vector<double> bits;
    bits.reserve(records.size());
    for (const CommentRecord& rec : records)
      bits.push_back(static_cast<double>((*rec.labels)[l]));

    try {
      result.rho = pearson(scores, bits);
    } catch (const UndefinedCorrelationError&) {
      result.rho = std::nullopt;
    } catch (const UsageError&) {
      result.rho = std::nullopt;
    }
  }
  return out;
}

std::array<CorrelationResult, 7> correlate_features(
    const std::vector<CommentRecord>& records,
    std::span<const FeatureVector> features) {
  if (records.size() != features.size())
    throw UsageError("records/features length mismatch");

  auto always = [](const FeatureVector&) { return true; };

  struct Variable {
    std::string_view name;
    std::function<bool(const FeatureVector&)> present;
    std::function<double(const FeatureVector&)> value;
  };
  // Report order: lexicon counts, sense features, then polarity confidence.
  const std::array<Variable, 7> variables = {{
      {"positive_words", always,
       [](const FeatureVector& f) { return static_cast<double>(f.positive_words); }},
      {"negative_words", always,
       [](const FeatureVector& f) { return static_cast<double>(f.negative_words); }},
      {"subjective_words", always,
       [](const FeatureVector& f) { return static_cast<double>(f.subjective_words); }},
      {"sense_combination",
       [](const FeatureVector& f) { return f.sense_combination.has_value(); },
       [](const FeatureVector& f) { return *f.sense_combination; }},
      {"sense_farmost",
       [](const FeatureVector& f) { return f.sense_farmost.has_value(); },
       [](const FeatureVector& f) { return *f.sense_farmost; }},
      {"sense_closest",
       [](const FeatureVector& f) { return f.sense_closest.has_value(); },
       [](const FeatureVector& f) { return *f.sense_closest; }},
      {"positive_polarity_confidence", always,
       [](const FeatureVector& f) { return f.positive_polarity_confidence; }},
  }};

  std::array<CorrelationResult, 7> out;
  for (std::size_t v = 0; v < variables.size(); ++v) {
    CorrelationResult& result = out[v];
    result.variable = std::string(variables[v].name);

    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (!variables[v].present(features[i])) continue;
      xs.push_back(static_cast<double>(records[i].score));
      ys.push_back(variables[v].value(features[i]));
    }
    result.n = xs.size();
    result.n_dropped = records.size() - xs.size();

    try {
      result.rho = pearson(xs, ys);
    } catch (const UndefinedCorrelationError&) {
      result.rho = std::nullopt;
    } catch (const UsageError&) {
      result.rho = std::nullopt;
    }
  }
  return out;
}

}  // namespace comet
