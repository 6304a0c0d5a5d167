#pragma once

#include <string_view>

namespace srf {

inline constexpr std::string_view version = "1.0.0";

}  // namespace srf
