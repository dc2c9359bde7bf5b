// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit when any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sevote/agreement.hpp"
#include "sevote/classifier.hpp"
#include "sevote/ensemble.hpp"
#include "sevote/experiment_config.hpp"
#include "sevote/folds.hpp"
#include "sevote/metrics.hpp"
#include "sevote/numeric_text.hpp"
#include "sevote/report.hpp"
#include "sevote/runner.hpp"
#include "support/synthetic.hpp"

namespace fs = std::filesystem;
using namespace sevote;
using P = Polarity;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (failures.size() < 8) failures.push_back(what);
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v, int decimals = 4) { return format_fixed(v, decimals); }

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("sevote_acceptance_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string("\"") + SEVOTE_CLI + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return status;
}

// 1. Majority vote against a brute-force plurality.
Outcome vote_oracle() {
  Outcome o;
  const auto start = Clock::now();
  Rng rng(42);
  std::size_t ties = 0, agree = 0;
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) {
      for (std::size_t c = 0; c < 3; ++c) {
        std::vector<P> votes = {polarity_at(a), polarity_at(b), polarity_at(c)};
        std::size_t count[3] = {0, 0, 0};
        ++count[a];
        ++count[b];
        ++count[c];
        std::optional<std::size_t> winner;
        for (std::size_t k = 0; k < 3; ++k) {
          bool strict = true;
          for (std::size_t j = 0; j < 3; ++j) strict = strict && (j == k || count[k] > count[j]);
          if (strict) winner = k;
        }
        auto r = majority_vote(votes, rng);
        auto pred = combine_votes(votes, rng);
        const bool distinct = a != b && b != c && a != c;
        bool ok = r.tie_broken == !winner.has_value() && pred.all_disagree == distinct &&
                  pred.tie_broken_randomly == distinct;
        if (winner) ok = ok && r.label == polarity_at(*winner);
        else ok = ok && (r.label == polarity_at(a) || r.label == polarity_at(b) || r.label == polarity_at(c));
        agree += ok;
        ties += r.tie_broken;
      }
    }
  }
  o.require(agree == 27, "brute-force mismatch on " + std::to_string(27 - agree) + " triples");
  o.require(ties == 6, std::to_string(ties) + " random ties instead of 6");

  const std::vector<P> tied = {P::Positive, P::Neutral, P::Negative};
  constexpr std::size_t kDraws = 100000;
  std::array<std::size_t, 3> freq{};
  Rng draws(42);
  for (std::size_t i = 0; i < kDraws; ++i) ++freq[index_of(majority_vote(tied, draws).label)];
  const double sigma = std::sqrt(kDraws * (1.0 / 3.0) * (2.0 / 3.0));
  double worst = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    const double dev = std::abs(static_cast<double>(freq[k]) - kDraws / 3.0);
    worst = std::max(worst, dev / kDraws);
    o.require(dev / kDraws <= 0.01, "label " + std::to_string(k) + " frequency off by more than 1%");
    o.require(dev <= 3 * sigma, "label " + std::to_string(k) + " outside 3 sigma");
  }
  Rng again(42);
  std::array<std::size_t, 3> freq2{};
  for (std::size_t i = 0; i < kDraws; ++i) ++freq2[index_of(majority_vote(tied, again).label)];
  o.require(freq == freq2, "seeded draws are not reproducible");

  const double secs = seconds_since(start);
  o.require(secs < 1.0, "took " + fmt(secs, 3) + " s");
  o.detail = std::to_string(agree) + "/27 triples, " + std::to_string(ties) + " ties, max deviation " +
             fmt(100 * worst, 3) + "%, " + fmt(secs, 3) + " s";
  return o;
}

// Brute force: per subject, agreeing ordered rater pairs; chance agreement
// from every ordered pair of pooled ratings.
double brute_kappa(const std::vector<RatingMatrix::Row>& rows) {
  std::vector<std::vector<std::size_t>> raters;
  std::vector<std::size_t> pool;
  for (const auto& r : rows) {
    std::vector<std::size_t> subject;
    for (std::size_t c = 0; c < 3; ++c) subject.insert(subject.end(), r[c], c);
    pool.insert(pool.end(), subject.begin(), subject.end());
    raters.push_back(std::move(subject));
  }
  double observed = 0.0;
  for (const auto& s : raters) {
    std::size_t same = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = 0; j < s.size(); ++j) same += i != j && s[i] == s[j];
    }
    observed += static_cast<double>(same) / static_cast<double>(s.size() * (s.size() - 1));
  }
  observed /= static_cast<double>(raters.size());
  std::size_t same = 0;
  for (auto a : pool) {
    for (auto b : pool) same += a == b;
  }
  const double expected = static_cast<double>(same) / static_cast<double>(pool.size() * pool.size());
  if (expected == 1.0) return 1.0;
  return (observed - expected) / (1.0 - expected);
}

// 2. Fleiss' kappa against the brute force.
Outcome kappa_oracle() {
  Outcome o;
  Rng rng(2);
  double worst = 0.0;
  for (int m = 0; m < 100; ++m) {
    const std::size_t N = 2 + rng.uniform_index(19);
    const std::size_t n = 2 + rng.uniform_index(4);
    std::vector<RatingMatrix::Row> rows(N, RatingMatrix::Row{});
    for (auto& r : rows) {
      // Skewed category probabilities so that agreement varies.
      const double p0 = rng.uniform01(), p1 = rng.uniform01() * (1 - p0);
      for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.uniform01();
        ++r[u < p0 ? 0 : (u < p0 + p1 ? 1 : 2)];
      }
    }
    const double got = fleiss_kappa(RatingMatrix(rows)).kappa;
    const double want = brute_kappa(rows);
    worst = std::max(worst, std::abs(got - want));
  }
  o.require(worst < 1e-12, "max |delta| " + format_double(worst));

  for (int m = 0; m < 20; ++m) {
    const std::size_t N = 2 + rng.uniform_index(50), n = 2 + rng.uniform_index(6);
    std::vector<RatingMatrix::Row> rows(N, RatingMatrix::Row{});
    for (std::size_t i = 0; i < N; ++i) rows[i][(i + static_cast<std::size_t>(m)) % (m % 4 == 0 ? 1 : 3)] = n;
    o.require(fleiss_kappa(RatingMatrix(rows)).kappa == 1.0, "perfect agreement did not give 1.0");
  }

  Rng uniform(10000);
  std::vector<RatingMatrix::Row> rows(10000, RatingMatrix::Row{});
  for (auto& r : rows) {
    for (int i = 0; i < 3; ++i) ++r[uniform.uniform_index(3)];
  }
  const double null_kappa = fleiss_kappa(RatingMatrix(rows)).kappa;
  o.require(std::abs(null_kappa) < 0.02, "random-rater kappa " + fmt(null_kappa));
  o.detail = "max |delta| " + format_double(worst) + " over 100 matrices, null kappa " + fmt(null_kappa);
  return o;
}

// 3. Stratified folds.
Outcome stratification() {
  Outcome o;
  Rng rng(3);
  std::size_t checked = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t size = 10 + rng.uniform_index(4991);
    // Arbitrary skew: random class weights, some classes possibly empty.
    double w[3];
    for (double& x : w) x = rng.bernoulli(0.1) ? 0.0 : rng.uniform01();
    if (w[0] + w[1] + w[2] == 0) w[1] = 1;
    std::vector<Document> docs;
    for (std::size_t i = 0; i < size; ++i) {
      const double u = rng.uniform01() * (w[0] + w[1] + w[2]);
      const P label = u < w[0] ? P::Positive : (u < w[0] + w[1] ? P::Neutral : P::Negative);
      docs.push_back({std::to_string(i), "t" + std::to_string(i), label});
    }
    Corpus corpus("s", docs);
    const std::size_t k = 2 + rng.uniform_index(9);
    const std::uint64_t seed = rng.next();
    auto plan = stratified_kfold(corpus, k, seed);
    o.require(plan == stratified_kfold(corpus, k, seed), "same seed gave a different plan");
    std::vector<std::size_t> seen(size, 0);
    for (std::size_t f = 0; f < k; ++f) {
      ClassCounts in_fold;
      for (auto i : plan.test_indices(f)) {
        ++seen[i];
        ++in_fold[corpus[i].label];
      }
      for (P p : kPolarities) {
        const double share = static_cast<double>(corpus.distribution()[p]) / static_cast<double>(k);
        o.require(std::abs(static_cast<double>(in_fold[p]) - share) <= 1.0,
                  "corpus " + std::to_string(t) + " fold " + std::to_string(f) + " off its class share");
      }
    }
    o.require(std::all_of(seen.begin(), seen.end(), [](std::size_t s) { return s == 1; }),
              "corpus " + std::to_string(t) + ": folds do not partition");
    ++checked;
  }
  o.detail = std::to_string(checked) + " corpora of 10 to 5000 documents";
  return o;
}

// 4. Metrics against direct counting.
Outcome metrics_oracle() {
  Outcome o;
  Rng rng(4);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t len = 1 + rng.uniform_index(30);
    std::vector<P> pred, gold;
    for (std::size_t i = 0; i < len; ++i) {
      pred.push_back(polarity_at(rng.uniform_index(3)));
      gold.push_back(polarity_at(rng.uniform_index(3)));
    }
    auto r = evaluate(pred, gold);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < len; ++i) correct += pred[i] == gold[i];
    worst = std::max(worst, std::abs(r.accuracy - static_cast<double>(correct) / static_cast<double>(len)));
    double f1_sum = 0.0;
    for (P c : kPolarities) {
      std::size_t tp = 0, fp = 0, fn = 0;
      for (std::size_t i = 0; i < len; ++i) {
        tp += pred[i] == c && gold[i] == c;
        fp += pred[i] == c && gold[i] != c;
        fn += pred[i] != c && gold[i] == c;
      }
      const double precision = tp + fp ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
      const double recall = tp + fn ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
      const double f1 = precision + recall > 0 ? 2 * precision * recall / (precision + recall) : 0.0;
      f1_sum += f1;
      const auto& got = r.per_class[index_of(c)];
      worst = std::max({worst, std::abs(got.precision - precision), std::abs(got.recall - recall),
                        std::abs(got.f1 - f1)});
      o.require(r.confusion[index_of(c)][index_of(c)] == tp, "confusion diagonal mismatch");
    }
    worst = std::max(worst, std::abs(r.macro_f1 - f1_sum / 3.0));
  }
  o.require(worst <= 1e-12, "max |delta| " + format_double(worst));

  std::vector<P> gold = {P::Positive, P::Positive, P::Negative, P::Neutral};
  std::vector<P> pred = {P::Positive, P::Negative, P::Negative, P::Neutral};
  auto ex = evaluate(pred, gold);
  o.require(ex.accuracy == 0.75, "worked example accuracy " + format_double(ex.accuracy));
  o.require(std::abs(ex.macro_f1 - 7.0 / 9.0) <= 1e-15, "worked example macro-F1 " + format_double(ex.macro_f1));
  o.detail = "max |delta| " + format_double(worst) + " over 50 pairs, worked example accuracy " +
             format_double(ex.accuracy) + ", macro-F1 " + fmt(ex.macro_f1, 6);
  return o;
}

// 5. Three byte-identical models.
Outcome unanimity() {
  Outcome o;
  auto domain = testing::lexicon_domain("u", 20, 10, 60, 5);
  auto train_corpus = testing::generate_corpus("U", domain, testing::counts(300, 400, 300), {}, 6);
  auto model = train({Family::Logistic, {}, "U"}, train_corpus.documents(), 7);
  std::ostringstream bytes;
  write_model(bytes, model);
  std::vector<ClassifierModel> copies;
  for (int i = 0; i < 3; ++i) {
    std::istringstream in(bytes.str());
    copies.push_back(read_model(in));
    std::ostringstream again;
    write_model(again, copies.back());
    o.require(again.str() == bytes.str(), "model copy is not byte-identical");
  }
  VotingClassifier vc(copies);
  std::size_t corpora = 0;
  for (std::uint64_t s = 0; s < 4; ++s) {
    auto shifted = testing::shifted_domain(domain, 0.25 * static_cast<double>(s), "t" + std::to_string(s), s);
    auto test = testing::generate_corpus("T" + std::to_string(s), shifted, testing::counts(200, 150, 250), {}, 20 + s);
    std::vector<P> gold, single, voted;
    for (const auto& d : test.documents()) gold.push_back(d.label);
    single = model.predict_batch(test.documents());
    auto preds = vc.predict_all(test.documents(), 99, 2);
    for (const auto& p : preds) voted.push_back(p.final_label);
    o.require(evaluate(voted, gold).accuracy == evaluate(single, gold).accuracy, "VC accuracy differs");
    o.require(disagreement_rate(preds) == 0.0, "nonzero disagreement");
    o.require(fleiss_kappa(ratings_from_votes(preds)).kappa == 1.0, "kappa is not 1.0");
    ++corpora;
  }

  // Through the runner: identical member specs train identical models.
  CorpusStore store;
  store.add(train_corpus, "U");
  ExperimentConfig cfg{"1", "within", {{{Family::NaiveBayes, {}, "U"}, {Family::NaiveBayes, {}, "U"},
                                        {Family::NaiveBayes, {}, "U"}}, "1.1"},
                       "U", ExperimentMode::WithinDomain, 5, 11};
  for (const auto& row : run_within_domain(cfg, store)) {
    for (const auto& m : row.members) o.require(row.vc_accuracy == m.accuracy, "runner VC accuracy differs");
    o.require(row.disagreement_rate == 0.0, "runner disagreement");
    o.require(row.kappa == 1.0, "runner kappa");
  }
  o.detail = std::to_string(corpora) + " test corpora plus a 5-fold runner check";
  return o;
}

// 6. Within-domain: VC against its members.
Outcome within_direction() {
  Outcome o;
  const auto start = Clock::now();
  auto domain = testing::lexicon_domain("w", 30, 10, 60, 6);
  testing::GeneratorOptions opt;
  opt.label_noise = 0.15;
  opt.signal_rate = 0.5;
  opt.min_tokens = 10;
  opt.max_tokens = 16;
  CorpusStore store;
  store.add(testing::generate_corpus("Synthetic", domain, testing::counts(1000, 1000, 1000), opt, 60), "S");
  ExperimentConfig cfg{"1", "within", {{{Family::Logistic, {}, "Synthetic"}, {Family::NaiveBayes, {}, "Synthetic"},
                                        {Family::Lexicon, {}, "Synthetic"}}, "1.1"},
                       "Synthetic", ExperimentMode::WithinDomain, 5, 42};
  auto rows = run_within_domain(cfg, store);
  double margin = 1.0, f1_margin = 1.0;
  for (const auto& row : rows) {
    if (row.is_mean()) continue;
    double best = 0, worst_f1 = 1;
    for (const auto& m : row.members) {
      best = std::max(best, m.accuracy);
      worst_f1 = std::min(worst_f1, m.macro_f1);
    }
    margin = std::min(margin, row.vc_accuracy - best);
    f1_margin = std::min(f1_margin, row.vc_macro_f1 - worst_f1);
    o.require(row.vc_accuracy >= best - 0.01, "fold " + row.fold + ": VC " + fmt(row.vc_accuracy) +
                                                  " vs best member " + fmt(best));
    o.require(row.vc_macro_f1 >= worst_f1, "fold " + row.fold + ": VC macro-F1 below every member");
  }
  const auto& mean = rows.back();
  const double secs = seconds_since(start);
  o.require(secs < 60.0, "took " + fmt(secs, 1) + " s");
  o.detail = "mean VC " + fmt(mean.vc_accuracy) + " (members " + fmt(mean.members[0].accuracy) + ", " +
             fmt(mean.members[1].accuracy) + ", " + fmt(mean.members[2].accuracy) + "), min VC - best member " +
             fmt(margin) + ", min VC F1 - worst member F1 " + fmt(f1_margin) + ", " + fmt(secs, 1) + " s";
  return o;
}

// 7. Cross-platform degradation and the overlap column.
Outcome cross_degradation() {
  Outcome o;
  auto a = testing::lexicon_domain("ca", 40, 40, 150, 7);
  auto b = testing::shifted_domain(a, 0.6, "cb", 8);
  auto source = testing::generate_corpus("Source", a, testing::counts(600, 700, 500), {}, 70, "a");
  auto fresh = testing::generate_corpus("Target", b, testing::counts(600, 700, 500), {}, 71, "b");

  // Replace a known share of the target with texts copied from the source.
  constexpr double kOverlap = 0.10;
  std::vector<Document> docs = fresh.documents();
  const auto copies = static_cast<std::size_t>(kOverlap * static_cast<double>(docs.size()));
  for (std::size_t i = 0; i < copies; ++i) docs[i].text = source[i * 7 % source.size()].text;
  Corpus target("Target", docs);

  CorpusStore store;
  store.add(source, "S");
  store.add(target, "T");
  const std::vector<ClassifierSpec> members = {
      {Family::Logistic, {}, "Source"}, {Family::NaiveBayes, {}, "Source"}, {Family::Lexicon, {}, "Source"}};
  ExperimentConfig within{"1", "within", {members, "1.1"}, "Source", ExperimentMode::WithinDomain, 5, 42};
  ExperimentConfig cross{"2", "cross", {members, "2.1"}, "Target", ExperimentMode::CrossPlatform, 5, 42};
  auto cv = run_within_domain(within, store).back();
  auto xp = run_cross_platform(cross, store);
  std::string detail;
  for (std::size_t m = 0; m < members.size(); ++m) {
    o.require(xp.members[m].accuracy < cv.members[m].accuracy,
              std::string(to_string(members[m].family)) + " cross " + fmt(xp.members[m].accuracy) +
                  " not below within " + fmt(cv.members[m].accuracy));
    detail += std::string(m ? ", " : "") + std::string(to_string(members[m].family)) + " " +
              fmt(cv.members[m].accuracy, 3) + " -> " + fmt(xp.members[m].accuracy, 3);
  }
  const double reported = xp.overlap.value_or(-1.0);
  o.require(std::abs(reported - kOverlap) <= 0.02, "overlap " + fmt(reported) + " vs constructed " + fmt(kOverlap));
  o.detail = detail + "; overlap " + fmt(reported) + " (constructed " + fmt(kOverlap, 2) + ")";
  return o;
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line.substr(1));
  while (std::getline(in, cell, '|')) {
    const auto b = cell.find_first_not_of(' '), e = cell.find_last_not_of(' ');
    cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  return cells;
}

// 8. Grid schema.
Outcome grid_schema() {
  Outcome o;
  auto dir = scratch("grid");
  const auto config = testing::write_reference_fixtures(dir / "data");

  // Ingestion checks the reference counts exactly.
  for (const char* name : {"API", "APP", "GitHub", "JIRA", "StackOverflow"}) {
    auto c = load_corpus(dir / "data" / (std::string(name) + ".csv"), name);
    bool ok = true;
    try {
      check_distribution(c, *reference_distribution(name));
    } catch (const CorpusError&) {
      ok = false;
    }
    o.require(ok, std::string(name) + " fails its reference counts");
  }
  auto api = load_corpus(dir / "data" / "API.csv", "API");
  o.require(api.size() == 4522 && api.distribution() == testing::counts(890, 3136, 496), "API is not 4522 = 890/3136/496");

  const int rc = run_cli("run-grid --config \"" + config.string() + "\" --grid all --out \"" + (dir / "out").string() + "\"",
                         dir / "run.log");
  o.require(rc == 0, "run-grid failed: " + slurp(dir / "run.log"));
  if (rc != 0) return o;
  auto results = load_results_csv(dir / "out" / "results.csv");

  std::map<std::string, std::vector<const ExperimentResult*>> by_exp;
  for (const auto& r : results) by_exp[r.experiment].push_back(&r);
  o.require(by_exp["within"].size() == 30, "within has " + std::to_string(by_exp["within"].size()) + " rows");
  o.require(by_exp["rq21"].size() == 12, "rq21 has " + std::to_string(by_exp["rq21"].size()) + " rows");
  o.require(by_exp["rq22"].size() == 8, "rq22 has " + std::to_string(by_exp["rq22"].size()) + " rows");

  std::vector<std::string> means, rq21, rq22;
  for (auto* r : by_exp["within"]) {
    if (r->is_mean()) means.push_back(r->run_id);
  }
  for (auto* r : by_exp["rq21"]) rq21.push_back(r->run_id);
  for (auto* r : by_exp["rq22"]) rq22.push_back(r->run_id);
  o.require(means == std::vector<std::string>{"1.1", "2.1", "3.1", "4.1", "5.1"}, "within ids");
  o.require(rq21 == std::vector<std::string>{"6.1", "7.1", "8.1", "9.1", "10.1", "11.1", "6.2", "7.2", "8.2",
                                              "9.2", "10.2", "11.2"},
            "rq21 ids");
  o.require(rq22 == std::vector<std::string>{"12.1", "12.2", "13.1", "13.2", "14.1", "14.2", "15.1", "15.2"},
            "rq22 ids");
  for (auto* r : by_exp["rq21"]) {
    o.require(r->n_test == (r->test_corpus == "API" ? 4522u : 341u), r->run_id + " #Data");
  }

  // Markdown: headers, formats and bold row maxima.
  std::ifstream md(dir / "out" / "results.md");
  const std::regex acc_cell(R"((\*\*)?\d\.\d\d(\*\*)?( \([A-Za-z]+\))?)");
  const std::regex pct_cell(R"(\d{1,3}\.\d%)");
  const std::regex kappa_cell(R"(-?\d\.\d\d)");
  const std::regex id_cell(R"(\d+\.\d+( \([A-Za-z]+\))?)");
  std::vector<std::string> headers;
  std::size_t data_rows = 0, bold_checked = 0;
  std::string line;
  std::vector<std::string> header;
  while (std::getline(md, line)) {
    if (line.rfind("| ID", 0) == 0) {
      header = split_cells(line);
      headers.push_back(line);
      continue;
    }
    if (line.rfind("|---", 0) == 0 || line.rfind("| ", 0) != 0) continue;
    auto cells = split_cells(line);
    ++data_rows;
    o.require(cells.size() == header.size(), "row width: " + line);
    if (cells.size() != header.size()) continue;
    const std::size_t first_acc = std::find(header.begin(), header.end(), "VC") - header.begin();
    o.require(std::regex_match(cells[0], id_cell), "id cell: " + cells[0]);
    for (std::size_t c = first_acc; c < first_acc + 4; ++c) {
      o.require(std::regex_match(cells[c], acc_cell), "accuracy cell: " + cells[c]);
    }
    o.require(std::regex_match(cells[first_acc + 4], pct_cell), "percent cell: " + cells[first_acc + 4]);
    o.require(std::regex_match(cells[first_acc + 5], kappa_cell), "kappa cell: " + cells[first_acc + 5]);

    // Bold cells must be exactly those equal to the row maximum at two decimals.
    std::vector<double> shown;
    std::vector<bool> bold;
    for (std::size_t c = first_acc; c < first_acc + 4; ++c) {
      bold.push_back(cells[c].rfind("**", 0) == 0);
      shown.push_back(std::stod(cells[c].substr(bold.back() ? 2 : 0, 4)));
    }
    const double top = *std::max_element(shown.begin(), shown.end());
    for (std::size_t i = 0; i < shown.size(); ++i) {
      o.require(bold[i] == (shown[i] == top), "bolding in: " + line);
    }
    ++bold_checked;
  }
  const std::string within_header = "| ID | #Data | VC | Logistic | NaiveBayes | Lexicon | Disagreement | κ |";
  const std::string rq21_header = "| ID | Testset | #Data | VC | Logistic | NaiveBayes | Lexicon | Disagreement | κ |";
  o.require(headers.size() == 4, std::to_string(headers.size()) + " tables instead of 4");
  if (headers.size() == 4) {
    o.require(headers[0] == within_header, "within mean header");
    o.require(headers[1] == "| ID | Fold | #Data | VC | Logistic | NaiveBayes | Lexicon | Disagreement | κ |",
              "within fold header");
    o.require(headers[2] == rq21_header, "rq21 header");
    o.require(std::regex_match(headers[3], std::regex(R"(\| ID \| Testset \| #Data \| VC \| \w+ \| \w+ \| \w+ \| Disagreement \| κ \|)")),
              "rq22 header: " + headers[3]);
  }
  o.require(data_rows == 50, std::to_string(data_rows) + " Markdown rows instead of 50");

  // A corpus off by one document fails loudly.
  auto broken = dir / "broken";
  fs::create_directories(broken);
  for (const auto& e : fs::directory_iterator(dir / "data")) fs::copy_file(e.path(), broken / e.path().filename());
  {
    auto text = slurp(broken / "API.csv");
    text.erase(text.rfind('\n', text.size() - 2) + 1);
    std::ofstream(broken / "API.csv", std::ios::binary) << text;
  }
  const int bad = run_cli("run-grid --config \"" + (broken / "config.yaml").string() + "\" --grid within --out \"" +
                              (dir / "bad").string() + "\"",
                          dir / "bad.log");
  const auto bad_log = slurp(dir / "bad.log");
  o.require(bad != 0, "run-grid accepted API with 4521 documents");
  o.require(bad_log.find("#Docs expected 4522, found 4521") != std::string::npos, "mismatch message: " + bad_log);
  o.require(!fs::exists(dir / "bad" / "results.csv"), "results written despite the mismatch");

  o.detail = "rows within/rq21/rq22 = " + std::to_string(by_exp["within"].size()) + "/" +
             std::to_string(by_exp["rq21"].size()) + "/" + std::to_string(by_exp["rq22"].size()) + ", " +
             std::to_string(bold_checked) + " Markdown rows checked, count mismatch rejected";
  return o;
}

// 9. Byte-identical reruns.
Outcome determinism() {
  Outcome o;
  auto dir = scratch("determinism");
  const auto config = testing::write_reference_fixtures(dir / "data");
  std::vector<std::string> csvs;
  for (const char* run : {"first", "second"}) {
    const int rc = run_cli("run-grid --config \"" + config.string() + "\" --grid all --out \"" + (dir / run).string() + "\"",
                           dir / (std::string(run) + ".log"));
    o.require(rc == 0, std::string(run) + " run failed");
    csvs.push_back(slurp(dir / run / "results.csv"));
  }
  const int rc = run_cli("run-grid --config \"" + config.string() + "\" --grid all --jobs 4 --out \"" +
                             (dir / "parallel").string() + "\"",
                         dir / "parallel.log");
  o.require(rc == 0, "parallel run failed");
  csvs.push_back(slurp(dir / "parallel" / "results.csv"));
  o.require(!csvs[0].empty(), "empty results");
  o.require(csvs[0] == csvs[1], "two identical runs differ");
  o.require(csvs[0] == csvs[2], "run with 4 jobs differs");
  o.detail = "results.csv (" + std::to_string(csvs[0].size()) + " bytes) identical across 2 runs and a 4-job run";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"vote oracle", vote_oracle},
      {"kappa oracle", kappa_oracle},
      {"stratification", stratification},
      {"metrics oracle", metrics_oracle},
      {"unanimity dominance", unanimity},
      {"within-domain direction", within_direction},
      {"cross-platform degradation", cross_degradation},
      {"grid schema", grid_schema},
      {"end-to-end determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << i + 1 << " " << criteria[i].first << ": " << o.detail
              << '\n';
    for (const auto& f : o.failures) std::cout << "        " << f << '\n';
    std::cout.flush();
    failed += !o.pass;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << '\n';
  return failed ? 1 : 0;
}
