#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace comet {

// Shortest decimal representation that round-trips through double.
std::string format_double(double value);

// Fixed-point rendering with the given number of decimals.
std::string format_fixed(double value, int decimals);

std::optional<std::int64_t> try_parse_int64(std::string_view text);
std::optional<double> try_parse_double(std::string_view text);

std::string to_lower_ascii(std::string_view text);

std::uint64_t fnv1a64(std::string_view bytes);

// FNV-1a digest of a file's bytes, as a 16-digit hex string.
std::string file_digest(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace comet
