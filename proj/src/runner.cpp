#include "sevote/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <mutex>
#include <set>
#include <thread>
#include <unordered_set>

#include "sevote/folds.hpp"
#include "sevote/metrics.hpp"
#include "sevote/rng.hpp"

namespace sevote {
namespace {

constexpr std::uint64_t kTrainTag = 0x747261696e000000ULL;  // "train"
constexpr std::uint64_t kVoteTag = 0x766f746500000000ULL;   // "vote"

// Runs fn(i) for i in [0, n) on up to `jobs` threads.
template <typename Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < std::min<std::size_t>(jobs, n); ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

// Trained models for one training set, shared between identical specs.
class ModelCache {
 public:
  const ClassifierModel& get(const ClassifierSpec& spec, std::span<const Document> docs,
                             std::uint64_t seed) {
    for (const auto& [s, m] : entries_) {
      if (s == spec) return m;
    }
    entries_.emplace_back(spec, train(spec, docs, seed));
    return entries_.back().second;
  }

 private:
  std::vector<std::pair<ClassifierSpec, ClassifierModel>> entries_;
};

std::string file_stem(const std::string& run_id, std::size_t fold) {
  return fold == kFullCorpus ? run_id : run_id + "_fold" + std::to_string(fold + 1);
}

void write_side_outputs(const RunSink& sink, const std::string& run_id, std::size_t fold,
                        std::span<const Document> docs, std::span<const EnsemblePrediction> preds,
                        std::span<const ClassifierModel> models) {
  if (sink.vote_log_dir) {
    std::filesystem::create_directories(*sink.vote_log_dir);
    std::ofstream out(*sink.vote_log_dir / (file_stem(run_id, fold) + ".csv"), std::ios::binary);
    if (!out) throw Error("cannot write vote log for run " + run_id);
    write_vote_log(out, docs, preds);
  }
  if (sink.model_dir) {
    std::filesystem::create_directories(*sink.model_dir);
    for (std::size_t m = 0; m < models.size(); ++m) {
      save_model(*sink.model_dir / (file_stem(run_id, fold) + "_m" + std::to_string(m + 1) + ".model"),
                 models[m]);
    }
  }
}

// Scores one evaluation of the ensemble against gold labels.
ExperimentResult score_run(const ExperimentConfig& config, const CorpusStore& corpora,
                           std::span<const Document> test_docs,
                           std::span<const EnsemblePrediction> preds) {
  ExperimentResult r;
  r.run_id = config.ensemble.id;
  r.experiment = config.experiment;
  r.grid_id = config.grid_id;
  r.mode = config.mode;
  r.test_corpus = config.test_corpus;
  r.test_tag = corpora.tag_of(config.test_corpus);
  r.n_test = test_docs.size();
  r.seed = config.seed;

  std::vector<Polarity> gold, final_labels;
  for (std::size_t i = 0; i < test_docs.size(); ++i) {
    gold.push_back(test_docs[i].label);
    final_labels.push_back(preds[i].final_label);
  }
  auto vc = evaluate(final_labels, gold);
  r.vc_accuracy = vc.accuracy;
  r.vc_macro_f1 = vc.macro_f1;

  for (std::size_t m = 0; m < config.ensemble.members.size(); ++m) {
    std::vector<Polarity> votes;
    votes.reserve(preds.size());
    for (const auto& p : preds) votes.push_back(p.votes[m]);
    auto mr = evaluate(votes, gold);
    const auto& spec = config.ensemble.members[m];
    r.members.push_back({spec, spec.training_corpus == "none" ? "none" : corpora.tag_of(spec.training_corpus),
                         mr.accuracy, mr.macro_f1});
  }
  r.disagreement_rate = disagreement_rate(preds);
  auto agreement = fleiss_kappa(ratings_from_votes(preds));
  r.kappa = agreement.kappa;
  r.band = agreement.band;
  return r;
}

ExperimentResult mean_row(const std::vector<ExperimentResult>& folds) {
  ExperimentResult mean = folds.front();
  mean.fold = "mean";
  const double k = static_cast<double>(folds.size());
  auto avg = [&](auto field) {
    double s = 0.0;
    for (const auto& f : folds) s += field(f);
    return s / k;
  };
  mean.n_test = static_cast<std::size_t>(std::llround(avg([](const auto& f) { return static_cast<double>(f.n_test); })));
  mean.vc_accuracy = avg([](const auto& f) { return f.vc_accuracy; });
  mean.vc_macro_f1 = avg([](const auto& f) { return f.vc_macro_f1; });
  for (std::size_t m = 0; m < mean.members.size(); ++m) {
    mean.members[m].accuracy = avg([m](const auto& f) { return f.members[m].accuracy; });
    mean.members[m].macro_f1 = avg([m](const auto& f) { return f.members[m].macro_f1; });
  }
  mean.disagreement_rate = avg([](const auto& f) { return f.disagreement_rate; });
  mean.kappa = avg([](const auto& f) { return f.kappa; });
  mean.band = landis_koch_band(std::clamp(mean.kappa, -1.0, 1.0));
  return mean;
}

using ModelProvider = std::function<const ClassifierModel&(const ClassifierSpec&)>;

ExperimentResult run_cross_with(const ExperimentConfig& config, const CorpusStore& corpora,
                                const RunSink& sink, const ModelProvider& provide) {
  config.validate();
  if (config.mode != ExperimentMode::CrossPlatform) {
    throw ConfigError("run " + config.ensemble.id + " is not a cross-platform run");
  }
  const Corpus& test = corpora.get(config.test_corpus);

  std::vector<ClassifierModel> models;
  std::vector<const Corpus*> training;
  for (const auto& spec : config.ensemble.members) {
    if (spec.training_corpus != "none") {
      const Corpus* c = &corpora.get(spec.training_corpus);
      // Never train on the test corpus (validate() checks names; this checks identity).
      if (c == &test) throw ConfigError("run " + config.ensemble.id + ": member trained on test corpus");
      if (std::find(training.begin(), training.end(), c) == training.end()) training.push_back(c);
    }
    models.push_back(provide(spec));
  }

  VotingClassifier vc(models);
  auto preds = vc.predict_all(test.documents(), vote_seed(config.seed, kFullCorpus));
  auto row = score_run(config, corpora, test.documents(), preds);
  row.fold = "all";
  row.overlap = text_overlap(test, training);
  write_side_outputs(sink, config.ensemble.id, kFullCorpus, test.documents(), preds, vc.members());
  return row;
}

std::span<const Document> training_docs_for(const ClassifierSpec& spec, const CorpusStore& corpora) {
  if (spec.training_corpus == "none") return {};
  return corpora.get(spec.training_corpus).documents();
}

}  // namespace

CorpusStore CorpusStore::load(const RunConfig& config) {
  CorpusStore store;
  std::vector<std::string> problems;
  for (const auto& src : config.corpora) {
    try {
      Corpus c = load_corpus(src.path, src.name);
      if (src.expect) check_distribution(c, *src.expect);
      store.add(std::move(c), src.tag);
    } catch (const Error& e) {
      problems.push_back("corpus '" + src.name + "': " + e.what());
    }
  }
  if (!problems.empty()) {
    std::string msg = "corpus loading failed:";
    for (const auto& p : problems) msg += "\n  - " + p;
    throw ConfigError(msg);
  }
  return store;
}

void CorpusStore::add(Corpus corpus, std::string tag) {
  std::string name = corpus.name();
  tags_[name] = tag.empty() ? name : std::move(tag);
  corpora_.insert_or_assign(name, std::move(corpus));
}

const Corpus& CorpusStore::get(const std::string& name) const {
  auto it = corpora_.find(name);
  if (it == corpora_.end()) throw ConfigError("corpus '" + name + "' is not configured");
  return it->second;
}

std::string CorpusStore::tag_of(const std::string& name) const {
  auto it = tags_.find(name);
  return it == tags_.end() ? name : it->second;
}

std::uint64_t training_seed(std::uint64_t run_seed, std::size_t fold) {
  return splitmix64(splitmix64(run_seed ^ kTrainTag) + static_cast<std::uint64_t>(fold));
}

std::uint64_t vote_seed(std::uint64_t run_seed, std::size_t fold) {
  return splitmix64(splitmix64(run_seed ^ kVoteTag) + static_cast<std::uint64_t>(fold));
}

std::vector<ExperimentResult> run_within_domain(const ExperimentConfig& config,
                                                const CorpusStore& corpora, const RunSink& sink) {
  config.validate();
  if (config.mode != ExperimentMode::WithinDomain) {
    throw ConfigError("run " + config.ensemble.id + " is not a within-domain run");
  }
  const Corpus& corpus = corpora.get(config.test_corpus);
  const FoldPlan plan = stratified_kfold(corpus, config.k, config.seed);

  std::vector<ExperimentResult> rows;
  for (std::size_t f = 0; f < plan.k; ++f) {
    const auto train_docs = select(corpus, plan.train_indices(f));
    const auto test_docs = select(corpus, plan.test_indices(f));
    {
      std::unordered_set<std::string_view> train_ids;
      for (const auto& d : train_docs) train_ids.insert(d.id);
      for (const auto& d : test_docs) {
        if (train_ids.count(d.id)) throw Error("fold " + std::to_string(f + 1) + " leaks document " + d.id);
      }
    }

    ModelCache cache;
    std::vector<ClassifierModel> models;
    for (const auto& spec : config.ensemble.members) {
      try {
        models.push_back(cache.get(spec, train_docs, training_seed(config.seed, f)));
      } catch (const DegenerateTrainingError& e) {
        throw DegenerateTrainingError("run " + config.ensemble.id + " fold " + std::to_string(f + 1) +
                                      ": " + e.what());
      }
    }
    VotingClassifier vc(std::move(models));
    auto preds = vc.predict_all(test_docs, vote_seed(config.seed, f));
    auto row = score_run(config, corpora, test_docs, preds);
    row.fold = std::to_string(f + 1);
    rows.push_back(std::move(row));
    write_side_outputs(sink, config.ensemble.id, f, test_docs, preds, vc.members());
  }
  rows.push_back(mean_row(rows));
  return rows;
}

ExperimentResult run_cross_platform(const ExperimentConfig& config, const CorpusStore& corpora,
                                    const RunSink& sink) {
  ModelCache cache;
  return run_cross_with(config, corpora, sink, [&](const ClassifierSpec& spec) -> const ClassifierModel& {
    return cache.get(spec, training_docs_for(spec, corpora), training_seed(config.seed, kFullCorpus));
  });
}

double text_overlap(const Corpus& test, std::span<const Corpus* const> training) {
  if (test.empty()) return 0.0;
  std::unordered_set<std::string> seen;
  for (const Corpus* c : training) {
    for (const auto& d : c->documents()) seen.insert(normalize_text(d.text));
  }
  std::size_t hits = 0;
  for (const auto& d : test.documents()) hits += seen.count(normalize_text(d.text));
  return static_cast<double>(hits) / static_cast<double>(test.size());
}

std::vector<SelectionScore> selection_scores(std::span<const ExperimentResult> within_results,
                                             const std::string& corpus) {
  std::vector<SelectionScore> scores;
  for (const auto& r : within_results) {
    if (r.mode != ExperimentMode::WithinDomain || r.is_mean() || r.test_corpus != corpus) continue;
    for (const auto& m : r.members) {
      ClassifierSpec key = m.spec;
      key.training_corpus = corpus;
      auto it = std::find_if(scores.begin(), scores.end(), [&](const SelectionScore& s) { return s.spec == key; });
      if (it == scores.end()) {
        scores.push_back({key, 0.0, 0.0, 0});
        it = scores.end() - 1;
      }
      // Identical members of one row score identically, so the mean is unaffected.
      it->mean_accuracy += m.accuracy;
      it->mean_macro_f1 += m.macro_f1;
      ++it->folds;
    }
  }
  for (auto& s : scores) {
    s.mean_accuracy /= static_cast<double>(s.folds);
    s.mean_macro_f1 /= static_cast<double>(s.folds);
  }
  return scores;
}

std::map<std::string, ClassifierSpec> best_member_per_corpus(
    std::span<const ExperimentResult> within_results, std::span<const std::string> required_corpora,
    std::span<const Family> required_families) {
  std::vector<std::string> corpora(required_corpora.begin(), required_corpora.end());
  if (corpora.empty()) {
    for (const auto& r : within_results) {
      if (r.mode == ExperimentMode::WithinDomain &&
          std::find(corpora.begin(), corpora.end(), r.test_corpus) == corpora.end()) {
        corpora.push_back(r.test_corpus);
      }
    }
  }

  std::vector<std::string> missing;
  std::map<std::string, ClassifierSpec> best;
  for (const auto& corpus : corpora) {
    auto scores = selection_scores(within_results, corpus);
    for (Family f : required_families) {
      if (std::none_of(scores.begin(), scores.end(), [f](const SelectionScore& s) { return s.spec.family == f; })) {
        missing.push_back(std::string(to_string(f)) + "@" + corpus);
      }
    }
    if (scores.empty()) {
      if (required_families.empty()) missing.push_back("any@" + corpus);
      continue;
    }
    auto better = [](const SelectionScore& a, const SelectionScore& b) {
      if (a.mean_accuracy != b.mean_accuracy) return a.mean_accuracy > b.mean_accuracy;
      if (a.mean_macro_f1 != b.mean_macro_f1) return a.mean_macro_f1 > b.mean_macro_f1;
      return a.spec.family < b.spec.family;
    };
    best[corpus] = std::min_element(scores.begin(), scores.end(), better)->spec;
  }
  if (!missing.empty()) {
    std::string msg = "within-domain results missing for:";
    for (const auto& m : missing) msg += " " + m;
    throw Error(msg);
  }
  return best;
}

std::vector<std::string> resolve_experiments(const GridDefinition& grids, const std::string& which) {
  std::vector<std::string> names;
  if (which == "all") {
    for (const auto& e : grids.experiments) names.push_back(e.name);
    return names;
  }
  if (!grids.find(which)) {
    std::string known;
    for (const auto& e : grids.experiments) known += (known.empty() ? "" : ", ") + e.name;
    throw ConfigError("unknown grid '" + which + "' (known: " + known + ", all)");
  }
  return {which};
}

namespace {

void check_grid_corpora(const GridDefinition& grids, const std::vector<std::string>& experiments,
                        const std::function<bool(const std::string&)>& known, const char* holder) {
  std::vector<std::string> problems;
  std::set<std::string> reported;
  for (const auto& name : experiments) {
    const auto* exp = grids.find(name);
    if (!exp) {
      problems.push_back("unknown experiment '" + name + "'");
      continue;
    }
    for (const auto& corpus : exp->referenced_corpora()) {
      if (!known(corpus) && reported.insert(corpus).second) {
        problems.push_back("experiment '" + name + "' needs corpus '" + corpus + "', which the " +
                           holder + " does not declare");
      }
    }
  }
  if (!problems.empty()) {
    std::string msg = "grid run cannot start:";
    for (const auto& p : problems) msg += "\n  - " + p;
    throw ConfigError(msg);
  }
}

}  // namespace

void validate_grid_run(const RunConfig& config, const GridDefinition& grids,
                       const std::vector<std::string>& experiments) {
  check_grid_corpora(grids, experiments, [&](const std::string& c) { return config.corpus(c) != nullptr; },
                     "config");
}

GridOutcome run_grid(const RunConfig& config, const GridDefinition& grids,
                     const std::vector<std::string>& experiments, const CorpusStore& corpora,
                     const RunSink& sink) {
  check_grid_corpora(grids, experiments, [&](const std::string& c) { return corpora.contains(c); },
                     "corpus store");
  GridOutcome outcome;

  // Resolve best@ members with dedicated within-domain runs of every family.
  std::vector<std::string> selection_corpora;
  for (const auto& name : experiments) {
    for (const auto& c : grids.find(name)->needs_selection()) {
      if (std::find(selection_corpora.begin(), selection_corpora.end(), c) == selection_corpora.end()) {
        selection_corpora.push_back(c);
      }
    }
  }
  if (!selection_corpora.empty()) {
    std::vector<ExperimentConfig> runs;
    for (std::size_t i = 0; i < selection_corpora.size(); ++i) {
      ExperimentConfig cfg;
      cfg.grid_id = "0";
      cfg.experiment = "selection";
      cfg.mode = ExperimentMode::WithinDomain;
      cfg.k = config.folds;
      cfg.seed = config.seed;
      cfg.test_corpus = selection_corpora[i];
      cfg.ensemble.id = "0." + std::to_string(i + 1);
      for (Family f : {Family::Lexicon, Family::NaiveBayes, Family::Logistic}) {
        ClassifierSpec spec;
        spec.family = f;
        spec.training_corpus = selection_corpora[i];
        cfg.ensemble.members.push_back(spec);
      }
      runs.push_back(std::move(cfg));
    }
    std::vector<std::vector<ExperimentResult>> rows(runs.size());
    parallel_for(runs.size(), config.jobs, [&](std::size_t i) { rows[i] = run_within_domain(runs[i], corpora); });
    for (auto& r : rows) outcome.selection_results.insert(outcome.selection_results.end(), r.begin(), r.end());
    const std::vector<Family> families{Family::Lexicon, Family::NaiveBayes, Family::Logistic};
    outcome.selected = best_member_per_corpus(outcome.selection_results, selection_corpora, families);
  }

  for (const auto& name : experiments) {
    const auto* exp = grids.find(name);
    const auto runs = exp->expand(config.folds, config.seed, outcome.selected);
    std::vector<std::vector<ExperimentResult>> rows(runs.size());

    if (exp->mode == ExperimentMode::WithinDomain) {
      parallel_for(runs.size(), config.jobs, [&](std::size_t i) {
        rows[i] = run_within_domain(runs[i], corpora, sink);
      });
    } else {
      // Train every distinct member once on its full corpus.
      std::vector<ClassifierSpec> specs;
      for (const auto& run : runs) {
        for (const auto& m : run.ensemble.members) {
          if (std::find(specs.begin(), specs.end(), m) == specs.end()) specs.push_back(m);
        }
      }
      std::vector<std::optional<ClassifierModel>> trained(specs.size());
      parallel_for(specs.size(), config.jobs, [&](std::size_t i) {
        trained[i].emplace(train(specs[i], training_docs_for(specs[i], corpora),
                                 training_seed(config.seed, kFullCorpus)));
      });
      ModelProvider provide = [&](const ClassifierSpec& spec) -> const ClassifierModel& {
        auto idx = static_cast<std::size_t>(std::find(specs.begin(), specs.end(), spec) - specs.begin());
        return *trained[idx];
      };
      parallel_for(runs.size(), config.jobs, [&](std::size_t i) {
        rows[i] = {run_cross_with(runs[i], corpora, sink, provide)};
      });
    }
    for (auto& r : rows) outcome.results.insert(outcome.results.end(), r.begin(), r.end());
  }
  return outcome;
}

}  // namespace sevote
