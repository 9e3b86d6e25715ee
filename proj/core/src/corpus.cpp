#include "comet/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "comet/csv.hpp"
#include "comet/error.hpp"
#include "comet/format.hpp"

namespace comet {

namespace {

constexpr std::array<std::string_view, 6> kMandatoryColumns = {
    "id", "parent_id", "author", "created_utc", "score", "text"};

std::size_t find_column(const csv::Row& header, std::string_view name) {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  return header.size();
}

struct IntStats {
  std::int64_t count = 0;
  std::int64_t sum = 0;
  __int128 sum_sq = 0;
  std::int64_t min = 0;
  std::int64_t max = 0;

  void add(std::int64_t x) {
    if (count == 0) {
      min = max = x;
    } else {
      min = std::min(min, x);
      max = std::max(max, x);
    }
    ++count;
    sum += x;
    sum_sq += static_cast<__int128>(x) * x;
  }

  StatSummary summary() const {
    StatSummary s;
    s.mean = static_cast<double>(sum) / static_cast<double>(count);
    s.min = static_cast<double>(min);
    s.max = static_cast<double>(max);
    if (count > 1) {
      double ss = static_cast<double>(sum_sq) -
                  static_cast<double>(sum) * static_cast<double>(sum) /
                      static_cast<double>(count);
      s.std_dev = std::sqrt(std::max(0.0, ss / static_cast<double>(count - 1)));
    }
    return s;
  }
};

}  // namespace

std::string_view CorpusSchema::resolve(std::string_view canonical) const {
  auto it = columns.find(canonical);
  return it == columns.end() ? canonical : std::string_view(it->second);
}

std::vector<CommentRecord> parse_corpus(std::string_view bytes,
                                        const CorpusSchema& schema,
                                        std::string_view filename) {
  const std::string file(filename);
  csv::Table table = csv::parse(bytes, filename);
  if (table.header.empty()) throw ParseError(file, 1, "missing header row");

  std::array<std::size_t, 6> mandatory{};
  for (std::size_t i = 0; i < kMandatoryColumns.size(); ++i) {
    std::string_view actual = schema.resolve(kMandatoryColumns[i]);
    std::size_t col = find_column(table.header, actual);
    if (col == table.header.size())
      throw ParseError(file, 1,
                       "missing mandatory column '" + std::string(actual) + "'");
    mandatory[i] = col;
  }

  std::array<std::size_t, kLabelCount> label_cols{};
  std::size_t labels_found = 0;
  for (std::size_t i = 0; i < kLabelCount; ++i) {
    std::string_view actual = schema.resolve(kLabelNames[i]);
    std::size_t col = find_column(table.header, actual);
    label_cols[i] = col;
    if (col != table.header.size()) ++labels_found;
  }
  if (labels_found != 0 && labels_found != kLabelCount)
    throw ParseError(file, 1, "label columns must appear all together (found " +
                                  std::to_string(labels_found) + " of 6)");
  const bool has_labels = labels_found == kLabelCount;

  std::vector<CommentRecord> records;
  records.reserve(table.rows.size());
  std::unordered_set<std::string> seen_ids;
  seen_ids.reserve(table.rows.size());

  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const csv::Row& row = table.rows[r];
    const std::size_t line = table.row_lines[r];
    if (row.size() != table.header.size())
      throw ParseError(file, line,
                       "expected " + std::to_string(table.header.size()) +
                           " fields, got " + std::to_string(row.size()));

    CommentRecord rec;
    rec.id = row[mandatory[0]];
    rec.parent_id = row[mandatory[1]];
    rec.author = row[mandatory[2]];
    if (rec.id.empty()) throw ParseError(file, line, "empty id");
    if (row[mandatory[5]].empty()) throw ParseError(file, line, "empty text");

    auto ts = try_parse_int64(row[mandatory[3]]);
    if (!ts)
      throw ParseError(file, line,
                       "non-integer created_utc '" + row[mandatory[3]] + "'");
    rec.created_utc = *ts;

    auto score = try_parse_int64(row[mandatory[4]]);
    if (!score)
      throw ParseError(file, line, "non-integer score '" + row[mandatory[4]] + "'");
    rec.score = *score;

    rec.text = row[mandatory[5]];

    if (has_labels) {
      LabelSet labels;
      for (std::size_t i = 0; i < kLabelCount; ++i) {
        const std::string& cell = row[label_cols[i]];
        if (cell == "0") {
          labels[i] = 0;
        } else if (cell == "1") {
          labels[i] = 1;
        } else {
          throw ParseError(file, line,
                           "label value '" + cell + "' outside {0,1} for " +
                               std::string(kLabelNames[i]));
        }
      }
      rec.labels = labels;
    }

    if (!seen_ids.insert(rec.id).second)
      throw DataError("duplicate comment id '" + rec.id + "' (" + file + ":" +
                      std::to_string(line) + ")");
    records.push_back(std::move(rec));
  }
  return records;
}

std::size_t word_count(std::string_view text) {
  std::size_t count = 0;
  bool in_word = false;
  for (unsigned char c : text) {
    bool space = c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
                 c == '\f';
    if (space) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++count;
    }
  }
  return count;
}

DatasetSummary summarize(const std::vector<CommentRecord>& records) {
  if (records.empty()) throw DataError("empty corpus");

  DatasetSummary out;
  out.n_comments = records.size();

  std::unordered_map<std::string_view, std::int64_t> per_parent;
  std::unordered_map<std::string_view, std::int64_t> per_user;
  IntStats words;
  IntStats impact;
  std::array<std::int64_t, kLabelCount> positives{};
  bool all_labeled = true;

  for (const CommentRecord& rec : records) {
    ++per_parent[rec.parent_id];
    ++per_user[rec.author];
    words.add(static_cast<std::int64_t>(word_count(rec.text)));
    impact.add(rec.score);
    if (rec.labels) {
      for (std::size_t i = 0; i < kLabelCount; ++i) positives[i] += (*rec.labels)[i];
    } else {
      all_labeled = false;
    }
  }

  IntStats parent_counts;
  for (const auto& [_, n] : per_parent) parent_counts.add(n);
  IntStats user_counts;
  for (const auto& [_, n] : per_user) user_counts.add(n);

  out.n_parents = per_parent.size();
  out.n_users = per_user.size();
  out.comments_per_parent = parent_counts.summary();
  out.comments_per_user = user_counts.summary();
  out.words_per_comment = words.summary();
  out.impact = impact.summary();

  if (all_labeled) {
    std::array<double, kLabelCount> rates{};
    for (std::size_t i = 0; i < kLabelCount; ++i)
      rates[i] = static_cast<double>(positives[i]) / static_cast<double>(records.size());
    out.label_positive_rate = rates;
  }
  return out;
}

std::array<double, kLabelCount> label_distribution(
    const std::vector<CommentRecord>& records) {
  if (records.empty()) throw DataError("empty corpus");
  std::array<std::int64_t, kLabelCount> positives{};
  for (const CommentRecord& rec : records) {
    if (!rec.labels)
      throw DataError("record '" + rec.id + "' is missing labels");
    for (std::size_t i = 0; i < kLabelCount; ++i) positives[i] += (*rec.labels)[i];
  }
  std::array<double, kLabelCount> out{};
  for (std::size_t i = 0; i < kLabelCount; ++i)
    out[i] = static_cast<double>(positives[i]) / static_cast<double>(records.size());
  return out;
}

int weekday_utc(std::int64_t epoch_seconds) {
  std::int64_t days = epoch_seconds / 86400;
  if (epoch_seconds % 86400 < 0) --days;  // floor for pre-epoch timestamps
  // 1970-01-01 was a Thursday.
  return static_cast<int>(((days + 3) % 7 + 7) % 7);
}

WeekdayTable weekday_breakdown(const std::vector<CommentRecord>& records) {
  if (records.empty()) throw DataError("empty corpus");
  std::array<std::array<std::int64_t, kLabelCount>, 7> positives{};
  std::array<std::int64_t, 7> counts{};
  std::array<std::int64_t, kLabelCount> total_positives{};

  for (const CommentRecord& rec : records) {
    if (!rec.labels)
      throw DataError("record '" + rec.id + "' is missing labels");
    int d = weekday_utc(rec.created_utc);
    ++counts[d];
    for (std::size_t i = 0; i < kLabelCount; ++i) {
      positives[d][i] += (*rec.labels)[i];
      total_positives[i] += (*rec.labels)[i];
    }
  }

  WeekdayTable table;
  for (int d = 0; d < 7; ++d) {
    table.counts[d] = static_cast<std::size_t>(counts[d]);
    if (counts[d] == 0) continue;
    std::array<double, kLabelCount> row{};
    for (std::size_t i = 0; i < kLabelCount; ++i)
      row[i] = 100.0 * (static_cast<double>(positives[d][i]) /
                        static_cast<double>(counts[d]));
    table.rows[d] = row;
  }
  for (std::size_t i = 0; i < kLabelCount; ++i)
    table.overall[i] = 100.0 * (static_cast<double>(total_positives[i]) /
                                static_cast<double>(records.size()));
  return table;
}

}  // namespace comet
