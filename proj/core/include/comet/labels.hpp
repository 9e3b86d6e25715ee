#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace comet {

// The six binary annotations carried by a labeled comment. This order is
// fixed and used by every table, report and file format in the toolkit.
enum class Label : std::size_t {
  EmotionalDisclosure = 0,
  InformationalDisclosure = 1,
  Support = 2,
  GeneralSupport = 3,
  InformationalSupport = 4,
  EmotionalSupport = 5,
};

inline constexpr std::size_t kLabelCount = 6;

inline constexpr std::array<std::string_view, kLabelCount> kLabelNames = {
    "emotional_disclosure", "informational_disclosure", "support",
    "general_support",      "informational_support",    "emotional_support",
};

// Human-facing names for rendered tables.
inline constexpr std::array<std::string_view, kLabelCount> kLabelTitles = {
    "Emotional Disclosure", "Informational Disclosure", "Support",
    "General Support",      "Informational Support",    "Emotional Support",
};

std::optional<Label> label_from_name(std::string_view name);

struct LabelSet {
  std::array<std::uint8_t, kLabelCount> values{};

  std::uint8_t& operator[](Label l) { return values[static_cast<std::size_t>(l)]; }
  std::uint8_t operator[](Label l) const { return values[static_cast<std::size_t>(l)]; }
  std::uint8_t& operator[](std::size_t i) { return values[i]; }
  std::uint8_t operator[](std::size_t i) const { return values[i]; }

  friend bool operator==(const LabelSet&, const LabelSet&) = default;
};

}  // namespace comet
