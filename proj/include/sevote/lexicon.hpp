#pragma once

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sevote/polarity.hpp"

namespace sevote {

std::span<const std::string_view> builtin_positive_words() noexcept;
std::span<const std::string_view> builtin_negative_words() noexcept;

/// Dictionary scorer. Each lexicon hit contributes its valence; the sign is
/// flipped when a negator (not, no, never, or a token ending in n't) occurs
/// within `negation_window` tokens before the hit. Positive totals map to
/// Positive, negative totals to Negative, zero to Neutral.
class LexiconModel {
 public:
  /// Model over the built-in word lists.
  LexiconModel();
  explicit LexiconModel(std::unordered_map<std::string, int> valence, int negation_window = 2);

  int score(std::span<const std::string> tokens) const;
  int score(std::string_view text) const;
  Polarity predict(std::string_view text) const;

  static bool is_negator(std::string_view token) noexcept;

  const std::unordered_map<std::string, int>& valence() const noexcept { return valence_; }
  int negation_window() const noexcept { return negation_window_; }

  friend bool operator==(const LexiconModel&, const LexiconModel&) = default;

 private:
  std::unordered_map<std::string, int> valence_;
  int negation_window_ = 2;
};

}  // namespace sevote
