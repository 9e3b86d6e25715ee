#pragma once

namespace comet {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace comet
