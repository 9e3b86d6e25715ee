#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace comet {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad argument values or violated call preconditions.
struct UsageError : Error {
  using Error::Error;
};

// An input file does not match its declared format.
struct ParseError : Error {
  ParseError(const std::string& file, std::size_t line, const std::string& message)
      : Error(file + ":" + std::to_string(line) + ": " + message), file(file), line(line) {}
  explicit ParseError(const std::string& message) : Error(message), line(0) {}

  std::string file;
  std::size_t line;
};

// Input parsed but violates a data contract (duplicate ids, coverage gaps,
// degenerate statistics).
struct DataError : Error {
  using Error::Error;
};

// Pearson correlation of a constant sequence.
struct UndefinedCorrelationError : DataError {
  using DataError::DataError;
};

}  // namespace comet
