#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "comet/lexicon.hpp"
#include "comet/wordnet.hpp"

namespace comet {

// The seven per-comment semantic features. Sense features are absent when
// the text gives them nothing to work with.
struct FeatureVector {
  std::size_t positive_words = 0;
  std::size_t negative_words = 0;
  double positive_polarity_confidence = 0.5;
  std::size_t subjective_words = 0;
  std::optional<double> sense_combination;
  std::optional<double> sense_farmost;  // largest cross-word sense similarity
  std::optional<double> sense_closest;  // smallest
};

inline constexpr std::array<std::string_view, 7> kFeatureNames = {
    "positive_words",     "negative_words", "positive_polarity_confidence",
    "subjective_words",   "sense_combination", "sense_farmost",
    "sense_closest",
};

// (1 + (P - N) / (P + N)) / 2 over positive/negative lexicon counts;
// 0.5 when the text hits neither lexicon.
double polarity_confidence(std::span<const std::string> tokens, const Lexicons& lexicons);

// Sum of ln(sense count) over tokens with at least one sense; absent when
// no token has a sense.
std::optional<double> sense_combination(std::span<const std::string> tokens,
                                        const SenseTaxonomy& taxonomy);

struct SenseExtremes {
  std::optional<double> farmost;
  std::optional<double> closest;
};

// Extremes of path similarity over all sense pairs of distinct token types;
// a word's senses are never compared with themselves.
SenseExtremes sense_extremes(std::span<const std::string> tokens,
                             const SenseTaxonomy& taxonomy);

FeatureVector extract_features(std::string_view text, const SenseTaxonomy& taxonomy,
                               const Lexicons& lexicons);

// Feature file: comma-separated, one row per comment, absent values empty.
std::string features_to_csv(std::span<const std::string> ids,
                            std::span<const FeatureVector> features);

struct FeatureFile {
  std::vector<std::string> ids;
  std::vector<FeatureVector> features;
};

FeatureFile features_from_csv(std::string_view text,
                              std::string_view filename = "<features>");

}  // namespace comet
