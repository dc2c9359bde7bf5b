#include <map>
#include <sstream>

#include "doctest.h"
#include "sevote/ensemble.hpp"
#include "sevote/error.hpp"
#include "sevote/numeric_text.hpp"
#include "support/synthetic.hpp"

using namespace sevote;
using P = Polarity;

namespace {

EnsemblePrediction prediction(std::vector<P> votes) {
  Rng rng(1);
  return combine_votes(std::move(votes), rng);
}

ClassifierModel fixed_model(P label) {
  // Lexicon whose only valenced word decides the label; neutral when absent.
  std::unordered_map<std::string, int> table;
  if (label == P::Positive) table["x"] = 1;
  if (label == P::Negative) table["x"] = -1;
  return ClassifierModel({Family::Lexicon, {}, "none"}, LexiconModel(table));
}

}  // namespace

TEST_CASE("majority vote basics") {
  Rng rng(42);
  std::vector<P> a = {P::Positive, P::Positive, P::Negative};
  auto r = majority_vote(a, rng);
  CHECK(r.label == P::Positive);
  CHECK_FALSE(r.tie_broken);
  std::vector<P> b = {P::Neutral, P::Neutral, P::Neutral};
  CHECK(majority_vote(b, rng).label == P::Neutral);

  std::vector<P> even = {P::Positive, P::Negative};
  CHECK_THROWS_AS(majority_vote(even, rng), Error);
  CHECK_THROWS_AS(majority_vote(std::span<const P>{}, rng), Error);
}

TEST_CASE("seeded tie-break is reproducible") {
  std::vector<P> tie = {P::Positive, P::Neutral, P::Negative};
  Rng first(42);
  std::vector<P> run1, run2;
  for (int i = 0; i < 50; ++i) run1.push_back(majority_vote(tie, first).label);
  Rng second(42);
  for (int i = 0; i < 50; ++i) run2.push_back(majority_vote(tie, second).label);
  CHECK(run1 == run2);
  CHECK(majority_vote(tie, first).tie_broken);
}

TEST_CASE("five-member ties choose among the tied labels only") {
  std::vector<P> votes = {P::Positive, P::Positive, P::Negative, P::Negative, P::Neutral};
  Rng rng(5);
  std::map<P, int> seen;
  for (int i = 0; i < 2000; ++i) {
    auto r = majority_vote(votes, rng);
    CHECK(r.tie_broken);
    ++seen[r.label];
  }
  CHECK(seen[P::Neutral] == 0);
  CHECK(seen[P::Positive] > 900);
  CHECK(seen[P::Negative] > 900);

  std::vector<P> plurality = {P::Positive, P::Positive, P::Negative, P::Neutral, P::Positive};
  CHECK(majority_vote(plurality, rng).label == P::Positive);
}

TEST_CASE("combine votes flags") {
  auto unanimous = prediction({P::Positive, P::Positive, P::Positive});
  CHECK(unanimous.final_label == P::Positive);
  CHECK_FALSE(unanimous.all_disagree);
  auto split = prediction({P::Positive, P::Neutral, P::Negative});
  CHECK(split.all_disagree);
  CHECK(split.tie_broken_randomly);
  auto two = prediction({P::Neutral, P::Negative, P::Neutral});
  CHECK(two.final_label == P::Neutral);
  CHECK_FALSE(two.all_disagree);
  CHECK_FALSE(two.tie_broken_randomly);
}

TEST_CASE("disagreement rate") {
  std::vector<EnsemblePrediction> preds(125, prediction({P::Neutral, P::Neutral, P::Neutral}));
  CHECK(disagreement_rate(preds) == 0.0);
  preds[7] = prediction({P::Negative, P::Neutral, P::Positive});
  CHECK(disagreement_rate(preds) == doctest::Approx(0.008).epsilon(1e-15));
  CHECK(format_percent(disagreement_rate(preds)) == "0.8%");

  std::vector<EnsemblePrediction> hundred;
  for (int i = 0; i < 100; ++i) {
    hundred.push_back(i < 12 ? prediction({P::Positive, P::Negative, P::Neutral})
                             : prediction({P::Positive, P::Negative, P::Negative}));
  }
  CHECK(disagreement_rate(hundred) == doctest::Approx(0.12).epsilon(1e-15));
  CHECK_THROWS_AS(disagreement_rate(std::span<const EnsemblePrediction>{}), Error);
}

TEST_CASE("ensemble spec validation") {
  ClassifierSpec lex;
  ClassifierSpec nb{Family::NaiveBayes, {}, "GitHub"};
  EnsembleSpec ok{{lex, nb, lex}, "1.1"};
  CHECK_NOTHROW(ok.validate());
  EnsembleSpec even{{lex, nb}, "1.1"};
  CHECK_THROWS_AS(even.validate(), ConfigError);
  EnsembleSpec bad_id{{lex, nb, lex}, "one"};
  CHECK_THROWS_AS(bad_id.validate(), ConfigError);
  EnsembleSpec bad_member{{lex, {Family::Logistic, {}, "none"}, lex}, "2.1"};
  CHECK_THROWS_AS(bad_member.validate(), ConfigError);
  CHECK(is_valid_run_id("12.2"));
  CHECK_FALSE(is_valid_run_id("12."));
  CHECK_FALSE(is_valid_run_id(".2"));
  CHECK_FALSE(is_valid_run_id("1.2.3"));
}

TEST_CASE("voting classifier") {
  CHECK_THROWS_AS(VotingClassifier({fixed_model(P::Positive)}), ConfigError);
  CHECK_THROWS_AS(VotingClassifier({fixed_model(P::Positive), fixed_model(P::Negative)}), ConfigError);

  VotingClassifier split({fixed_model(P::Positive), fixed_model(P::Neutral), fixed_model(P::Negative)});
  Document doc{"1", "x", P::Positive};
  Rng rng(3);
  auto p = split.predict(doc, rng);
  CHECK(p.votes == std::vector<P>{P::Positive, P::Neutral, P::Negative});
  CHECK(p.all_disagree);

  auto domain = testing::lexicon_domain("v", 15, 5, 30, 8);
  auto corpus = testing::generate_corpus("v", domain, testing::counts(200, 200, 200), {}, 9);
  auto nb = train({Family::NaiveBayes, {}, "v"}, std::span(corpus.documents()).subspan(0, 300), 1);
  auto lr = train({Family::Logistic, {}, "v"}, std::span(corpus.documents()).subspan(0, 300), 1);
  VotingClassifier mixed({nb, lr, ClassifierModel({Family::Lexicon, {}, "none"}, LexiconModel())});
  auto seq = mixed.predict_all(corpus.documents(), 77, 1);
  auto par = mixed.predict_all(corpus.documents(), 77, 4);
  REQUIRE(seq.size() == par.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    CHECK(seq[i].votes == par[i].votes);
    CHECK(seq[i].final_label == par[i].final_label);
  }

  VotingClassifier same({nb, nb, nb});
  auto preds = same.predict_all(corpus.documents(), 1, 2);
  for (std::size_t i = 0; i < corpus.size(); ++i) CHECK(preds[i].final_label == nb.predict(corpus[i]));
}

TEST_CASE("vote log") {
  std::vector<Document> docs = {{"a,1", "t", P::Positive}, {"b", "u", P::Neutral}};
  std::vector<EnsemblePrediction> preds = {prediction({P::Positive, P::Positive, P::Negative}),
                                           prediction({P::Neutral, P::Neutral, P::Neutral})};
  std::ostringstream out;
  write_vote_log(out, docs, preds);
  CHECK(out.str() ==
        "doc_id,member1,member2,member3,final,tie\n"
        "\"a,1\",positive,positive,negative,positive,false\n"
        "b,neutral,neutral,neutral,neutral,false\n");
}
