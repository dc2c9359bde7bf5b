#include "sevote/features.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <unordered_set>

namespace sevote {
namespace {

bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

char lower(unsigned char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (std::size_t i = 0; i < text.size(); ++i) {
    auto c = static_cast<unsigned char>(text[i]);
    if (is_word_byte(c)) {
      current.push_back(lower(c));
    } else if (c == '\'' && !current.empty() && i + 1 < text.size() &&
               is_word_byte(static_cast<unsigned char>(text[i + 1]))) {
      current.push_back('\'');
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

void Vocabulary::add(std::string token, std::uint32_t df) {
  index_.emplace(token, static_cast<std::uint32_t>(tokens_.size()));
  tokens_.push_back(std::move(token));
  df_.push_back(df);
}

Vocabulary Vocabulary::build(std::span<const Document> train_docs, std::size_t min_df) {
  if (train_docs.empty()) throw Error("cannot build a vocabulary from an empty training set");
  if (min_df < 1) throw Error("min_df must be at least 1");

  std::vector<std::string> order;
  std::unordered_map<std::string, std::uint32_t> df;
  for (const auto& doc : train_docs) {
    auto tokens = tokenize(doc.text);
    std::unordered_set<std::string_view> seen;
    for (const auto& t : tokens) {
      if (!seen.insert(t).second) continue;
      auto [it, inserted] = df.try_emplace(t, 0);
      if (inserted) order.push_back(t);
      ++it->second;
    }
  }

  Vocabulary vocab;
  for (auto& t : order) {
    std::uint32_t f = df[t];
    if (f >= min_df) vocab.add(std::move(t), f);
  }
  return vocab;
}

std::ptrdiff_t Vocabulary::find(std::string_view token) const {
  auto it = index_.find(token);
  return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

void Vocabulary::write(std::ostream& out) const {
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    out << i << '\t' << tokens_[i] << '\t' << df_[i] << '\n';
  }
}

Vocabulary Vocabulary::read(std::istream& in, std::size_t count) {
  Vocabulary vocab;
  std::string line;
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::getline(in, line)) throw Error("vocabulary truncated at entry " + std::to_string(i));
    auto t1 = line.find('\t');
    auto t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) throw Error("malformed vocabulary line '" + line + "'");
    std::size_t index = 0;
    std::uint32_t df = 0;
    auto r1 = std::from_chars(line.data(), line.data() + t1, index);
    auto r2 = std::from_chars(line.data() + t2 + 1, line.data() + line.size(), df);
    if (r1.ec != std::errc{} || r2.ec != std::errc{} || index != i) {
      throw Error("malformed vocabulary line '" + line + "'");
    }
    std::string token = line.substr(t1 + 1, t2 - t1 - 1);
    if (token.empty() || vocab.index_.count(token)) throw Error("invalid vocabulary token at " + std::to_string(i));
    vocab.add(std::move(token), df);
  }
  return vocab;
}

void Vocabulary::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write vocabulary '" + path.string() + "'");
  write(out);
}

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open vocabulary '" + path.string() + "'");
  std::size_t lines = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) ++lines;
  }
  in.clear();
  in.seekg(0);
  return read(in, lines);
}

FeatureVector vectorize(std::string_view text, const Vocabulary& vocab) {
  std::map<std::uint32_t, std::uint32_t> counts;
  for (const auto& t : tokenize(text)) {
    auto idx = vocab.find(t);
    if (idx >= 0) ++counts[static_cast<std::uint32_t>(idx)];
  }
  FeatureVector fv;
  fv.entries.assign(counts.begin(), counts.end());
  return fv;
}

}  // namespace sevote
