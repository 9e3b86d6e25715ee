#include "comet/labels.hpp"

namespace comet {

std::optional<Label> label_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kLabelCount; ++i)
    if (kLabelNames[i] == name) return static_cast<Label>(i);
  return std::nullopt;
}

}  // namespace comet
