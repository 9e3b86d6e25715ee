#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace comet::csv {

using Row = std::vector<std::string>;

struct Table {
  Row header;
  std::vector<Row> rows;               // data rows, header excluded
  std::vector<std::size_t> row_lines;  // 1-based line where each row starts
};

// RFC 4180 style comma-separated text: double-quoted fields may contain
// commas, embedded quotes ("" escapes) and line breaks. Accepts LF and CRLF.
// Blank lines are skipped. Throws ParseError on stray or unterminated quotes.
Table parse(std::string_view text, std::string_view filename = "<csv>");

// Quotes the field only when it needs quoting.
std::string escape(std::string_view field);

std::string format_row(const Row& row);

}  // namespace comet::csv
