#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace sevote {

/// Shortest text that parses back to exactly `value` ("inf", "-inf" and
/// "nan" for non-finite values).
std::string format_double(double value);

/// Parses the output of format_double (and any plain decimal/exponent
/// form). Returns nullopt unless the whole string is consumed.
std::optional<double> parse_double(std::string_view text);

/// Fixed-point rendering with `decimals` digits after the point.
std::string format_fixed(double value, int decimals);

/// `fraction` rendered as a percentage with one decimal, e.g. 0.008 → "0.8%".
std::string format_percent(double fraction);

}  // namespace sevote
