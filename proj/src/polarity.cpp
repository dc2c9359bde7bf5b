#include "sevote/polarity.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace sevote {

std::string_view to_string(Polarity p) noexcept {
  switch (p) {
    case Polarity::Positive: return "positive";
    case Polarity::Neutral: return "neutral";
    case Polarity::Negative: return "negative";
  }
  return "neutral";
}

char short_code(Polarity p) noexcept {
  switch (p) {
    case Polarity::Positive: return 'P';
    case Polarity::Neutral: return 'O';
    case Polarity::Negative: return 'N';
  }
  return '?';
}

std::optional<Polarity> parse_polarity(std::string_view text) noexcept {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (Polarity p : kPolarities) {
    if (lower == to_string(p)) return p;
  }
  return std::nullopt;
}

}  // namespace sevote
