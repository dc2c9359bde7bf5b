// sevote: polarity classifiers, majority-vote ensembles and experiment grids
// from the command line.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sevote/agreement.hpp"
#include "sevote/classifier.hpp"
#include "sevote/corpus.hpp"
#include "sevote/csv.hpp"
#include "sevote/ensemble.hpp"
#include "sevote/error.hpp"
#include "sevote/experiment_config.hpp"
#include "sevote/metrics.hpp"
#include "sevote/numeric_text.hpp"
#include "sevote/report.hpp"
#include "sevote/runner.hpp"

namespace fs = std::filesystem;
using namespace sevote;

namespace {

struct Options {
  std::uint64_t seed = 42;

  // ingest / validate-corpus / evaluate / predict / train
  std::string input;
  std::string name;
  std::string output;
  std::string emotion_map;
  bool dedup = false;
  std::string expect;

  // train
  std::string family;
  Hyperparameters params;

  // predict / evaluate
  std::vector<std::string> models;
  std::string text;
  unsigned threads = 1;

  // run-grid
  std::string config;
  std::string grid = "all";
  std::string grids_file;
  std::string out_dir;
  unsigned jobs = 0;
  bool vote_logs = false;
  bool save_models = false;

  // report
  std::string results;
  std::string format = "md";
};

void write_file(const fs::path& path, const std::string& data) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << data;
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

std::string corpus_name(const Options& o) {
  return o.name.empty() ? fs::path(o.input).stem().string() : o.name;
}

std::optional<ExpectedDistribution> parse_expect(const std::string& text, const std::string& name) {
  if (text.empty()) return std::nullopt;
  if (text == "reference") {
    auto ref = reference_distribution(name);
    if (!ref) throw ConfigError("no reference distribution for corpus '" + name + "'");
    return ref;
  }
  std::vector<std::size_t> v;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto d = parse_double(item);
    if (!d || *d < 0 || *d != static_cast<double>(static_cast<std::size_t>(*d))) {
      throw ConfigError("--expect must be 'reference' or total,positive,neutral,negative");
    }
    v.push_back(static_cast<std::size_t>(*d));
  }
  if (v.size() != 4) throw ConfigError("--expect must be 'reference' or total,positive,neutral,negative");
  ExpectedDistribution e;
  e.total = v[0];
  e.counts.counts = {v[1], v[2], v[3]};
  return e;
}

/// Documents from a CSV with `id` and `text` columns; `label` is optional.
std::vector<Document> read_documents(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  auto records = csv::read(in);
  if (records.empty()) throw Error("'" + path.string() + "' is empty");
  std::ptrdiff_t id_col = -1, text_col = -1, label_col = -1;
  const auto& header = records.front().fields;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "id") id_col = static_cast<std::ptrdiff_t>(i);
    if (header[i] == "text") text_col = static_cast<std::ptrdiff_t>(i);
    if (header[i] == "label") label_col = static_cast<std::ptrdiff_t>(i);
  }
  if (id_col < 0 || text_col < 0) throw Error("'" + path.string() + "': header needs 'id' and 'text' columns");
  std::vector<Document> docs;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& f = records[r].fields;
    if (f.size() != header.size()) {
      throw Error("'" + path.string() + "' row " + std::to_string(records[r].row) + ": expected " +
                  std::to_string(header.size()) + " fields, found " + std::to_string(f.size()));
    }
    Document d{f[static_cast<std::size_t>(id_col)], f[static_cast<std::size_t>(text_col)], Polarity::Neutral};
    if (label_col >= 0) {
      auto p = parse_polarity(f[static_cast<std::size_t>(label_col)]);
      if (!p) throw Error("'" + path.string() + "' row " + std::to_string(records[r].row) + ": unknown label");
      d.label = *p;
    }
    docs.push_back(std::move(d));
  }
  return docs;
}

std::vector<ClassifierModel> load_models(const std::vector<std::string>& paths) {
  std::vector<ClassifierModel> models;
  for (const auto& p : paths) models.push_back(load_model(p));
  return models;
}

void check_ensemble_size(std::size_t n, bool allow_single) {
  if (allow_single && n == 1) return;
  if (n < 3 || n % 2 == 0) {
    throw ConfigError("an ensemble needs an odd number of at least 3 models, got " + std::to_string(n));
  }
}

int cmd_ingest(const Options& o) {
  const std::string name = corpus_name(o);
  Corpus corpus;
  if (o.emotion_map.empty()) {
    corpus = load_corpus(o.input, name);
  } else {
    auto mapping = o.emotion_map == "default" ? EmotionMapping::defaults() : EmotionMapping::load(o.emotion_map);
    corpus = map_emotions(load_emotion_corpus(o.input), mapping, name);
  }
  const std::size_t before = corpus.size();
  if (o.dedup) corpus = deduplicate(corpus);
  if (auto expected = parse_expect(o.expect, name)) check_distribution(corpus, *expected);
  save_corpus(o.output, corpus);
  std::cout << format_distribution(distribution_report(corpus));
  if (o.dedup) std::cout << "Removed    " << before - corpus.size() << '\n';
  return 0;
}

int cmd_validate(const Options& o) {
  const std::string name = corpus_name(o);
  auto corpus = load_corpus(o.input, name);
  auto expected = parse_expect(o.expect.empty() ? "reference" : o.expect, name);
  std::cout << format_distribution(distribution_report(corpus));
  check_distribution(corpus, *expected);
  std::cout << "OK\n";
  return 0;
}

int cmd_train(const Options& o) {
  auto family = parse_family(o.family);
  if (!family) throw ConfigError("unknown family '" + o.family + "'");
  ClassifierSpec spec{*family, o.params, "none"};
  std::vector<Document> docs;
  if (!o.input.empty()) {
    auto corpus = load_corpus(o.input, corpus_name(o));
    spec.training_corpus = corpus.name();
    docs = corpus.documents();
  }
  spec.validate();
  auto model = train(spec, docs, o.seed);
  save_model(o.output, model);
  std::cerr << "trained " << to_string(spec.family) << " on " << docs.size() << " documents\n";
  return 0;
}

int cmd_predict(const Options& o) {
  if (o.text.empty() == o.input.empty()) throw ConfigError("give exactly one of --text and --input");
  check_ensemble_size(o.models.size(), false);
  VotingClassifier vc(load_models(o.models));
  if (!o.text.empty()) {
    Rng rng = Rng::for_stream(o.seed, 0);
    auto p = vc.predict(Document{"text", o.text, Polarity::Neutral}, rng);
    std::cout << "final: " << to_string(p.final_label) << "\nvotes:";
    for (auto v : p.votes) std::cout << ' ' << to_string(v);
    std::cout << "\ntie: " << (p.tie_broken_randomly ? "true" : "false") << '\n';
    return 0;
  }
  auto docs = read_documents(o.input);
  auto preds = vc.predict_all(docs, o.seed, o.threads);
  std::ostringstream log;
  write_vote_log(log, docs, preds);
  if (o.output.empty()) std::cout << log.str();
  else write_file(o.output, log.str());
  return 0;
}

int cmd_evaluate(const Options& o) {
  check_ensemble_size(o.models.size(), true);
  auto corpus = load_corpus(o.input, corpus_name(o));
  std::vector<Polarity> gold;
  for (const auto& d : corpus.documents()) gold.push_back(d.label);
  auto models = load_models(o.models);
  if (models.size() == 1) {
    std::cout << format_metrics(evaluate(models[0].predict_batch(corpus.documents()), gold));
    return 0;
  }
  VotingClassifier vc(models);
  auto preds = vc.predict_all(corpus.documents(), o.seed, o.threads);
  std::vector<Polarity> final_labels;
  for (const auto& p : preds) final_labels.push_back(p.final_label);
  std::cout << "Ensemble\n" << format_metrics(evaluate(final_labels, gold));
  for (std::size_t m = 0; m < models.size(); ++m) {
    std::vector<Polarity> votes;
    for (const auto& p : preds) votes.push_back(p.votes[m]);
    std::cout << "\nMember " << m + 1 << " (" << to_string(models[m].family()) << ")\n"
              << format_metrics(evaluate(votes, gold));
  }
  std::cout << "\nDisagreement " << format_percent(disagreement_rate(preds)) << '\n'
            << format_agreement(fleiss_kappa(ratings_from_votes(preds)));
  return 0;
}

int cmd_run_grid(const Options& o, bool seed_given) {
  auto config = RunConfig::load(o.config);
  if (seed_given) config.seed = o.seed;
  if (o.jobs > 0) config.jobs = o.jobs;
  if (!o.out_dir.empty()) config.output_dir = o.out_dir;
  if (o.vote_logs) config.vote_logs = true;
  if (o.save_models) config.save_models = true;
  if (!o.grids_file.empty()) config.grid_file = o.grids_file;

  auto grids = config.grid_file ? GridDefinition::load(*config.grid_file) : GridDefinition::builtin();
  auto experiments = resolve_experiments(grids, o.grid);
  validate_grid_run(config, grids, experiments);
  auto store = CorpusStore::load(config);

  RunSink sink;
  if (config.vote_logs) sink.vote_log_dir = config.output_dir / "votes";
  if (config.save_models) sink.model_dir = config.output_dir / "models";
  auto outcome = run_grid(config, grids, experiments, store, sink);

  write_file(config.output_dir / "results.csv", emit_report(outcome.results, ReportFormat::Csv));
  write_file(config.output_dir / "results.md", emit_report(outcome.results, ReportFormat::Markdown));
  if (!outcome.selection_results.empty()) {
    write_file(config.output_dir / "selection.csv", emit_report(outcome.selection_results, ReportFormat::Csv));
    for (const auto& [corpus, spec] : outcome.selected) {
      std::cerr << "best@" << corpus << " = " << to_string(spec.family) << '\n';
    }
  }
  std::cerr << outcome.results.size() << " result rows written to " << config.output_dir.string() << '\n';
  return 0;
}

int cmd_report(const Options& o) {
  auto results = load_results_csv(o.results);
  auto text = emit_report(results, parse_report_format(o.format));
  if (o.output.empty()) std::cout << text;
  else write_file(o.output, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polarity classifiers and majority-vote ensembles for software-engineering text"};
  app.require_subcommand(1);
  Options o;

  auto seed_opt = [&o](CLI::App* cmd) {
    return cmd->add_option("--seed", o.seed, "Seed for every random choice")->capture_default_str();
  };

  auto* ingest = app.add_subcommand("ingest", "Normalize a labeled or emotion-annotated corpus");
  ingest->add_option("--input", o.input, "Source CSV (id,text,label or id,text,emotion)")->required();
  ingest->add_option("--name", o.name, "Corpus name (default: file stem)");
  ingest->add_option("--output", o.output, "Canonical corpus CSV to write")->required();
  ingest->add_option("--emotion-map", o.emotion_map, "Emotion mapping file, or 'default'");
  ingest->add_flag("--dedup", o.dedup, "Remove duplicate texts");
  ingest->add_option("--expect", o.expect, "'reference' or total,positive,neutral,negative");
  seed_opt(ingest);

  auto* validate = app.add_subcommand("validate-corpus", "Check a corpus against its expected class counts");
  validate->add_option("--input", o.input, "Corpus CSV")->required();
  validate->add_option("--name", o.name, "Corpus name (default: file stem)");
  validate->add_option("--expect", o.expect, "'reference' (default) or total,positive,neutral,negative");
  seed_opt(validate);

  auto* trn = app.add_subcommand("train", "Train one classifier and save it");
  trn->add_option("--family", o.family, "lexicon, naive_bayes or logistic")->required();
  trn->add_option("--input", o.input, "Training corpus CSV (not needed for lexicon)");
  trn->add_option("--name", o.name, "Training corpus name (default: file stem)");
  trn->add_option("--output", o.output, "Model file to write")->required();
  trn->add_option("--alpha", o.params.alpha, "Naive Bayes smoothing")->capture_default_str();
  trn->add_option("--epochs", o.params.epochs, "Logistic regression epochs")->capture_default_str();
  trn->add_option("--learning-rate", o.params.learning_rate, "Initial SGD learning rate")->capture_default_str();
  trn->add_option("--l2", o.params.l2, "L2 strength")->capture_default_str();
  trn->add_option("--min-df", o.params.min_df, "Minimum document frequency")->capture_default_str();
  seed_opt(trn);

  auto* pred = app.add_subcommand("predict", "Label text with a majority-vote ensemble");
  pred->add_option("--model", o.models, "Model file (repeat; odd count >= 3)")->required();
  pred->add_option("--text", o.text, "Single statement to label");
  pred->add_option("--input", o.input, "CSV with id and text columns");
  pred->add_option("--output", o.output, "Vote CSV to write (default: stdout)");
  pred->add_option("--threads", o.threads, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  seed_opt(pred);

  auto* eval = app.add_subcommand("evaluate", "Score a model or ensemble on a labeled corpus");
  eval->add_option("--model", o.models, "Model file (one, or an odd count >= 3)")->required();
  eval->add_option("--input", o.input, "Labeled corpus CSV")->required();
  eval->add_option("--name", o.name, "Corpus name (default: file stem)");
  eval->add_option("--threads", o.threads, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  seed_opt(eval);

  auto* grid = app.add_subcommand("run-grid", "Run experiment grids and write reports");
  grid->add_option("--config", o.config, "Run configuration (YAML)")->required();
  grid->add_option("--grid", o.grid, "within, rq21, rq22 or all")->capture_default_str();
  grid->add_option("--grids-file", o.grids_file, "Grid definitions (default: built-in)");
  grid->add_option("--out", o.out_dir, "Output directory (overrides the config)");
  grid->add_option("--jobs", o.jobs, "Parallel runs (overrides the config)");
  grid->add_flag("--vote-logs", o.vote_logs, "Write per-document vote logs");
  grid->add_flag("--save-models", o.save_models, "Write trained member models");
  auto* grid_seed = grid->add_option("--seed", o.seed, "Seed (overrides the config)");

  auto* rep = app.add_subcommand("report", "Render a results CSV");
  rep->add_option("--results", o.results, "results.csv from run-grid")->required();
  rep->add_option("--format", o.format, "csv or md")->capture_default_str();
  rep->add_option("--output", o.output, "File to write (default: stdout)");
  seed_opt(rep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*ingest) return cmd_ingest(o);
    if (*validate) return cmd_validate(o);
    if (*trn) return cmd_train(o);
    if (*pred) return cmd_predict(o);
    if (*eval) return cmd_evaluate(o);
    if (*grid) return cmd_run_grid(o, grid_seed->count() > 0);
    if (*rep) return cmd_report(o);
  } catch (const std::exception& e) {
    std::cerr << "sevote: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
