#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sevote/corpus.hpp"

namespace sevote {

/// Lowercases and splits on anything that is not a letter, digit or
/// non-ASCII byte. An apostrophe is kept only between two word characters
/// ("don't"), so leading/trailing quotes and pure punctuation vanish.
std::vector<std::string> tokenize(std::string_view text);

/// Dense token index built from training documents only.
class Vocabulary {
 public:
  Vocabulary() = default;

  /// Keeps tokens with document frequency >= min_df, indexed in order of
  /// first appearance. Throws Error on an empty training set or min_df < 1.
  static Vocabulary build(std::span<const Document> train_docs, std::size_t min_df = 1);

  std::size_t size() const noexcept { return tokens_.size(); }
  bool empty() const noexcept { return tokens_.empty(); }

  /// Index of `token`, or -1 when out of vocabulary.
  std::ptrdiff_t find(std::string_view token) const;
  const std::string& token(std::size_t index) const { return tokens_[index]; }
  std::uint32_t document_frequency(std::size_t index) const { return df_[index]; }

  /// `index<TAB>token<TAB>df` per line.
  void write(std::ostream& out) const;
  /// Reads `count` lines written by write(). Throws Error on malformed or
  /// non-dense input.
  static Vocabulary read(std::istream& in, std::size_t count);
  void save(const std::filesystem::path& path) const;
  static Vocabulary load(const std::filesystem::path& path);

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.tokens_ == b.tokens_ && a.df_ == b.df_;
  }

 private:
  void add(std::string token, std::uint32_t df);

  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
  };
  std::unordered_map<std::string, std::uint32_t, Hash, std::equal_to<>> index_;
  std::vector<std::string> tokens_;
  std::vector<std::uint32_t> df_;
};

/// Sparse token counts sorted by index. Absent indices count zero.
struct FeatureVector {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> entries;

  std::size_t total() const noexcept {
    std::size_t n = 0;
    for (auto [i, c] : entries) n += c;
    return n;
  }
  bool empty() const noexcept { return entries.empty(); }
};

FeatureVector vectorize(std::string_view text, const Vocabulary& vocab);
inline FeatureVector vectorize(const Document& doc, const Vocabulary& vocab) {
  return vectorize(doc.text, vocab);
}

}  // namespace sevote
