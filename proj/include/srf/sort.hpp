#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace srf {

/// The two carriers of a polarity: `one` is X (filters), `dual` is Y (ideals).
enum class Sort : std::uint8_t { one, dual };

constexpr Sort flip(Sort s) noexcept { return s == Sort::one ? Sort::dual : Sort::one; }

/// "1" or "d"; the document encoding of 1 and the dual tag.
constexpr std::string_view tag(Sort s) noexcept { return s == Sort::one ? "1" : "d"; }

constexpr std::optional<Sort> parse_tag(std::string_view t) noexcept {
  if (t == "1") return Sort::one;
  if (t == "d") return Sort::dual;
  return std::nullopt;
}

}  // namespace srf
