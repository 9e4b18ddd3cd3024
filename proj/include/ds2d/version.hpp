#pragma once

#include <string_view>

namespace ds2d {

inline constexpr std::string_view kToolName = "ds2dsim";
inline constexpr std::string_view kToolVersion = "0.1.0";

} // namespace ds2d
