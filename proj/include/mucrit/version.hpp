#pragma once

#include <string_view>

namespace mucrit {

inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace mucrit
