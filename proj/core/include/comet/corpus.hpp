#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "comet/labels.hpp"

namespace comet {

struct CommentRecord {
  std::string id;
  std::string parent_id;
  std::string author;
  std::int64_t created_utc = 0;  // seconds since the Unix epoch, UTC
  std::int64_t score = 0;        // the comment's Impact; may be negative
  std::string text;
  std::optional<LabelSet> labels;
};

// Maps canonical column names (id, parent_id, author, created_utc, score,
// text, and the six label names) onto the columns of a concrete file.
// Unmapped names resolve to themselves.
struct CorpusSchema {
  std::map<std::string, std::string, std::less<>> columns;

  std::string_view resolve(std::string_view canonical) const;
};

// Parses a comma-separated corpus file with a header row. The six label
// columns are optional but must appear together. Throws ParseError for
// malformed cells and DataError for duplicate ids.
std::vector<CommentRecord> parse_corpus(std::string_view bytes,
                                        const CorpusSchema& schema = {},
                                        std::string_view filename = "<corpus>");

// Number of maximal non-whitespace runs.
std::size_t word_count(std::string_view text);

struct StatSummary {
  double mean = 0;
  double min = 0;
  double max = 0;
  double std_dev = 0;  // sample standard deviation (n-1 denominator); 0 when n == 1
};

struct DatasetSummary {
  std::size_t n_comments = 0;
  std::size_t n_parents = 0;
  std::size_t n_users = 0;
  StatSummary comments_per_parent;
  StatSummary comments_per_user;
  StatSummary words_per_comment;
  StatSummary impact;
  // Present only when every record carries labels.
  std::optional<std::array<double, kLabelCount>> label_positive_rate;
};

// Throws DataError on an empty corpus.
DatasetSummary summarize(const std::vector<CommentRecord>& records);

// Positive fraction per label; every record must be labeled.
std::array<double, kLabelCount> label_distribution(const std::vector<CommentRecord>& records);

inline constexpr std::array<std::string_view, 7> kWeekdayNames = {
    "Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday"};

// Cells are percentages in [0, 100]. A weekday with no comments has no row.
struct WeekdayTable {
  std::array<std::optional<std::array<double, kLabelCount>>, 7> rows;  // Monday..Sunday
  std::array<double, kLabelCount> overall{};
  std::array<std::size_t, 7> counts{};
};

// 0 = Monday .. 6 = Sunday, evaluated in UTC.
int weekday_utc(std::int64_t epoch_seconds);

WeekdayTable weekday_breakdown(const std::vector<CommentRecord>& records);

}  // namespace comet
