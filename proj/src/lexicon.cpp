#include "sevote/lexicon.hpp"

#include "sevote/features.hpp"

namespace sevote {

LexiconModel::LexiconModel() {
  for (auto w : builtin_positive_words()) valence_.emplace(std::string(w), 1);
  for (auto w : builtin_negative_words()) valence_.emplace(std::string(w), -1);
}

LexiconModel::LexiconModel(std::unordered_map<std::string, int> valence, int negation_window)
    : valence_(std::move(valence)), negation_window_(negation_window) {}

bool LexiconModel::is_negator(std::string_view token) noexcept {
  return token == "not" || token == "no" || token == "never" || token.ends_with("n't");
}

int LexiconModel::score(std::span<const std::string> tokens) const {
  int total = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    auto it = valence_.find(tokens[i]);
    if (it == valence_.end()) continue;
    int v = it->second;
    std::size_t from = i >= static_cast<std::size_t>(negation_window_) ? i - negation_window_ : 0;
    for (std::size_t j = from; j < i; ++j) {
      if (is_negator(tokens[j])) {
        v = -v;
        break;
      }
    }
    total += v;
  }
  return total;
}

int LexiconModel::score(std::string_view text) const {
  auto tokens = tokenize(text);
  return score(tokens);
}

Polarity LexiconModel::predict(std::string_view text) const {
  int s = score(text);
  if (s > 0) return Polarity::Positive;
  if (s < 0) return Polarity::Negative;
  return Polarity::Neutral;
}

}  // namespace sevote
