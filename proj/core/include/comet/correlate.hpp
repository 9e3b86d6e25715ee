#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "comet/corpus.hpp"
#include "comet/semfeat.hpp"

namespace comet {

struct CorrelationResult {
  std::string variable;
  std::optional<double> rho;  // absent when undefined (zero variance or n < 2)
  std::size_t n = 0;
  std::size_t n_dropped = 0;
};

// Product-moment coefficient via the shifted two-pass formula. Throws
// UsageError on length mismatch or n < 2, UndefinedCorrelationError when
// either sequence has zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

// rho(score, label) per label, labels as 0/1 numerics. Undefined
// correlations are reported as absent, not fatal.
std::array<CorrelationResult, kLabelCount> correlate_labels(
    const std::vector<CommentRecord>& records);

// rho(score, feature) per feature, comments with an absent feature value
// excluded pairwise. Results follow the report order: the four counts
// first, sense features, then polarity confidence.
std::array<CorrelationResult, 7> correlate_features(
    const std::vector<CommentRecord>& records,
    std::span<const FeatureVector> features);

}  // namespace comet
