#include <sstream>

#include "doctest.h"
#include "sevote/features.hpp"
#include "sevote/rng.hpp"
#include "support/synthetic.hpp"

using namespace sevote;

namespace {

using Tokens = std::vector<std::string>;

std::vector<Document> docs_of(std::initializer_list<const char*> texts) {
  std::vector<Document> out;
  std::size_t i = 0;
  for (const char* t : texts) out.push_back({std::to_string(++i), t, Polarity::Neutral});
  return out;
}

std::string join(const Tokens& tokens) {
  std::string s;
  for (const auto& t : tokens) s += (s.empty() ? "" : " ") + t;
  return s;
}

}  // namespace

TEST_CASE("tokenize") {
  CHECK(tokenize("I don't like this phone") == Tokens{"i", "don't", "like", "this", "phone"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("@Mark Not you again...") == Tokens{"mark", "not", "you", "again"});
  CHECK(tokenize("--- !!! ...").empty());
  CHECK(tokenize("'quoted' rock'n'roll x86_64") == Tokens{"quoted", "rock'n'roll", "x86", "64"});
  CHECK(tokenize("Café naïve") == Tokens{"café", "naïve"});
}

TEST_CASE("tokenize is idempotent on its joined output") {
  Rng rng(3);
  const std::string alphabet = "aB9 '.,!-\t\n";
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    const std::size_t len = rng.uniform_index(40);
    for (std::size_t i = 0; i < len; ++i) text += alphabet[rng.uniform_index(alphabet.size())];
    const auto once = tokenize(text);
    CHECK(tokenize(join(once)) == once);
  }
}

TEST_CASE("vocabulary build") {
  auto docs = docs_of({"a b", "a c"});
  auto v1 = Vocabulary::build(docs, 1);
  REQUIRE(v1.size() == 3);
  CHECK(v1.token(0) == "a");
  CHECK(v1.token(1) == "b");
  CHECK(v1.token(2) == "c");
  CHECK(v1.document_frequency(0) == 2);
  CHECK(v1.find("zzz") == -1);

  auto v2 = Vocabulary::build(docs, 2);
  REQUIRE(v2.size() == 1);
  CHECK(v2.token(0) == "a");

  CHECK(Vocabulary::build(docs_of({"a a a"}), 1).document_frequency(0) == 1);
  CHECK_THROWS_AS(Vocabulary::build(std::vector<Document>{}, 1), Error);
  CHECK_THROWS_AS(Vocabulary::build(docs, 0), Error);
}

TEST_CASE("vocabulary text round trip") {
  auto v = Vocabulary::build(docs_of({"x y z", "y don't", "z"}), 1);
  std::stringstream s;
  v.write(s);
  CHECK(s.str().substr(0, 8) == "0\tx\t1\n1\t");
  CHECK(Vocabulary::read(s, v.size()) == v);

  std::istringstream bad("0\ta\t1\n2\tb\t1\n");
  CHECK_THROWS_AS(Vocabulary::read(bad, 2), Error);
}

TEST_CASE("vectorize") {
  auto v = Vocabulary::build(docs_of({"a b c"}), 1);
  auto fv = vectorize("a a b", v);
  REQUIRE(fv.entries.size() == 2);
  CHECK(fv.entries[0] == std::pair<std::uint32_t, std::uint32_t>{0, 2});
  CHECK(fv.entries[1] == std::pair<std::uint32_t, std::uint32_t>{1, 1});
  CHECK(vectorize("q r s", v).empty());
  CHECK(vectorize("A, c! unknown c", v).total() == 3);
}

TEST_CASE("vectorize properties on generated corpora") {
  auto domain = testing::lexicon_domain("f", 20, 10, 50, 5);
  auto corpus = testing::generate_corpus("c", domain, testing::counts(400, 400, 200), {}, 6);
  std::span<const Document> all(corpus.documents());
  auto train = all.subspan(0, 800);
  auto held = all.subspan(800);
  auto vocab = Vocabulary::build(train, 1);

  std::size_t tokens = 0, oov = 0;
  for (const auto& d : held) {
    const auto toks = tokenize(d.text);
    const auto fv = vectorize(d, vocab);
    for (auto [index, count] : fv.entries) CHECK(index < vocab.size());
    CHECK(fv.total() <= toks.size());
    std::size_t in_vocab = 0;
    for (const auto& t : toks) in_vocab += vocab.find(t) >= 0;
    CHECK(fv.total() == in_vocab);
    tokens += toks.size();
    oov += toks.size() - in_vocab;
  }
  REQUIRE(tokens > 0);
  CHECK(static_cast<double>(oov) / static_cast<double>(tokens) < 1.0);
}
