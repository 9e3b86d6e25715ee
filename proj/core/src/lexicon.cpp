#include "comet/lexicon.hpp"

#include "comet/error.hpp"
#include "comet/format.hpp"

namespace comet {

namespace {

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(line, ++line_no);
    pos = end + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

WordSet parse_opinion_lexicon(std::string_view bytes) {
  WordSet words;
  for_each_line(bytes, [&](std::string_view line, std::size_t) {
    std::string_view entry = trim(line);
    if (entry.empty() || entry.front() == ';') return;
    words.insert(to_lower_ascii(entry));
  });
  return words;
}

WordSet parse_subjectivity_clues(std::string_view bytes, std::string_view filename) {
  WordSet words;
  const std::string file(filename);
  for_each_line(bytes, [&](std::string_view line, std::size_t line_no) {
    if (trim(line).empty()) return;

    std::string word;
    std::string type;
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
      std::size_t start = pos;
      while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
      std::string_view field = line.substr(start, pos - start);
      if (std::size_t eq = field.find('='); eq != std::string_view::npos) {
        std::string_view key = field.substr(0, eq);
        std::string_view value = field.substr(eq + 1);
        if (key == "word1") word = to_lower_ascii(value);
        if (key == "type") type = std::string(value);
      }
    }
    if (word.empty() || type.empty())
      throw ParseError(file, line_no, "clue record missing word1= or type=");
    if (type == "weaksubj" || type == "strongsubj") words.insert(word);
  });
  return words;
}

std::size_t count_lexicon(std::span<const std::string> tokens, const WordSet& words) {
  std::size_t count = 0;
  for (const std::string& token : tokens)
    if (words.count(token)) ++count;
  return count;
}

}  // namespace comet
