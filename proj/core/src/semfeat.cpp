#include "comet/semfeat.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "comet/baseline.hpp"
#include "comet/csv.hpp"
#include "comet/error.hpp"
#include "comet/format.hpp"

namespace comet {

double polarity_confidence(std::span<const std::string> tokens, const Lexicons& lexicons) {
  const double p = static_cast<double>(count_lexicon(tokens, lexicons.positive));
  const double n = static_cast<double>(count_lexicon(tokens, lexicons.negative));
  if (p + n == 0.0) return 0.5;
  return (1.0 + (p - n) / (p + n)) / 2.0;
}

std::optional<double> sense_combination(std::span<const std::string> tokens,
                                        const SenseTaxonomy& taxonomy) {
  double sum = 0;
  bool any = false;
  for (const std::string& token : tokens) {
    const std::size_t n = sense_count(token, taxonomy);
    if (n == 0) continue;  // ln 0 undefined; senseless tokens are skipped
    sum += std::log(static_cast<double>(n));
    any = true;
  }
  if (!any) return std::nullopt;
  return sum;
}

SenseExtremes sense_extremes(std::span<const std::string> tokens,
                             const SenseTaxonomy& taxonomy) {
  // Distinct token types only: a word's senses are never paired with
  // themselves.
  std::vector<std::string> types;
  std::unordered_set<std::string_view> seen;
  for (const std::string& token : tokens)
    if (seen.insert(token).second) types.push_back(token);

  std::vector<std::vector<SynsetId>> senses;
  for (const std::string& type : types) {
    std::vector<SynsetId> s = taxonomy.all_senses(type);
    if (!s.empty()) senses.push_back(std::move(s));
  }

  SenseExtremes out;
  if (senses.size() < 2) return out;

  for (std::size_t i = 0; i < senses.size(); ++i) {
    for (std::size_t j = i + 1; j < senses.size(); ++j) {
      for (SynsetId a : senses[i]) {
        for (SynsetId b : senses[j]) {
          std::optional<double> sim = path_similarity(a, b, taxonomy);
          if (!sim) continue;
          if (!out.farmost || *sim > *out.farmost) out.farmost = *sim;
          if (!out.closest || *sim < *out.closest) out.closest = *sim;
        }
      }
    }
  }
  return out;
}

FeatureVector extract_features(std::string_view text, const SenseTaxonomy& taxonomy,
                               const Lexicons& lexicons) {
  const std::vector<std::string> tokens = tokenize(text);

  FeatureVector features;
  features.positive_words = count_lexicon(tokens, lexicons.positive);
  features.negative_words = count_lexicon(tokens, lexicons.negative);
  features.positive_polarity_confidence = polarity_confidence(tokens, lexicons);
  features.subjective_words = count_lexicon(tokens, lexicons.subjective);
  features.sense_combination = sense_combination(tokens, taxonomy);
  const SenseExtremes extremes = sense_extremes(tokens, taxonomy);
  features.sense_farmost = extremes.farmost;
  features.sense_closest = extremes.closest;
  return features;
}

std::string features_to_csv(std::span<const std::string> ids,
                            std::span<const FeatureVector> features) {
  if (ids.size() != features.size()) throw UsageError("id/feature length mismatch");

  csv::Row header{"id"};
  for (std::string_view name : kFeatureNames) header.emplace_back(name);
  std::string out = csv::format_row(header);

  auto opt_cell = [](const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
  };
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const FeatureVector& f = features[i];
    csv::Row row{ids[i],
                 std::to_string(f.positive_words),
                 std::to_string(f.negative_words),
                 format_double(f.positive_polarity_confidence),
                 std::to_string(f.subjective_words),
                 opt_cell(f.sense_combination),
                 opt_cell(f.sense_farmost),
                 opt_cell(f.sense_closest)};
    out += csv::format_row(row);
  }
  return out;
}

FeatureFile features_from_csv(std::string_view text, std::string_view filename) {
  const std::string file(filename);
  csv::Table table = csv::parse(text, filename);

  csv::Row expected{"id"};
  for (std::string_view name : kFeatureNames) expected.emplace_back(name);
  if (table.header != expected)
    throw ParseError(file, 1, "unexpected feature file header");

  FeatureFile out;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const csv::Row& row = table.rows[r];
    const std::size_t line = table.row_lines[r];
    if (row.size() != expected.size())
      throw ParseError(file, line, "wrong field count");

    auto count_at = [&](std::size_t col) -> std::size_t {
      auto v = try_parse_int64(row[col]);
      if (!v || *v < 0)
        throw ParseError(file, line, "bad count '" + row[col] + "'");
      return static_cast<std::size_t>(*v);
    };
    auto double_at = [&](std::size_t col) -> double {
      auto v = try_parse_double(row[col]);
      if (!v) throw ParseError(file, line, "bad number '" + row[col] + "'");
      return *v;
    };
    auto optional_at = [&](std::size_t col) -> std::optional<double> {
      if (row[col].empty()) return std::nullopt;
      return double_at(col);
    };

    FeatureVector f;
    f.positive_words = count_at(1);
    f.negative_words = count_at(2);
    f.positive_polarity_confidence = double_at(3);
    f.subjective_words = count_at(4);
    f.sense_combination = optional_at(5);
    f.sense_farmost = optional_at(6);
    f.sense_closest = optional_at(7);

    out.ids.push_back(row[0]);
    out.features.push_back(f);
  }
  return out;
}

}  // namespace comet
