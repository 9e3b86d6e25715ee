#pragma once

#include <span>
#include <string>
#include <string_view>
#include <unordered_set>

namespace comet {

using WordSet = std::unordered_set<std::string>;

struct Lexicons {
  WordSet positive;
  WordSet negative;
  WordSet subjective;
};

// Opinion-lexicon format: one word per line, ';' starts a comment line.
// Words are lowercased.
WordSet parse_opinion_lexicon(std::string_view bytes);

// Subjectivity-clue records: whitespace-separated key=value fields. Every
// record whose type is weaksubj or strongsubj contributes its word1,
// lowercased. Throws ParseError on records missing word1 or type.
WordSet parse_subjectivity_clues(std::string_view bytes,
                                 std::string_view filename = "<clues>");

// Token occurrences (with multiplicity) present in the set.
std::size_t count_lexicon(std::span<const std::string> tokens, const WordSet& words);

}  // namespace comet
