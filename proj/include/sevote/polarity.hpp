#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace sevote {

/// Three-way sentiment label. Declaration order is the fixed iteration and
/// tie-break order used throughout the library.
enum class Polarity : std::uint8_t { Positive = 0, Neutral = 1, Negative = 2 };

inline constexpr std::size_t kNumPolarities = 3;

inline constexpr std::array<Polarity, kNumPolarities> kPolarities{
    Polarity::Positive, Polarity::Neutral, Polarity::Negative};

constexpr std::size_t index_of(Polarity p) noexcept {
  return static_cast<std::size_t>(p);
}

constexpr Polarity polarity_at(std::size_t index) noexcept {
  return static_cast<Polarity>(index);
}

/// Lowercase canonical name ("positive", "neutral", "negative").
std::string_view to_string(Polarity p) noexcept;

/// Single-letter abbreviation used in compact logs.
char short_code(Polarity p) noexcept;

/// Case-insensitive parse of the canonical names; surrounding whitespace is
/// ignored.
std::optional<Polarity> parse_polarity(std::string_view text) noexcept;

}  // namespace sevote
