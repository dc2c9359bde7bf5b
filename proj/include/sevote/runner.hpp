#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sevote/corpus.hpp"
#include "sevote/ensemble.hpp"
#include "sevote/experiment_config.hpp"
#include "sevote/report.hpp"

namespace sevote {

/// Loaded corpora by name. Each corpus is validated against its configured
/// expected distribution on load.
class CorpusStore {
 public:
  CorpusStore() = default;

  /// Loads every corpus in `config`; all failures are reported together in
  /// one ConfigError.
  static CorpusStore load(const RunConfig& config);

  void add(Corpus corpus, std::string tag = {});
  const Corpus& get(const std::string& name) const;
  bool contains(const std::string& name) const { return corpora_.count(name) != 0; }
  std::string tag_of(const std::string& name) const;

 private:
  std::map<std::string, Corpus> corpora_;
  std::map<std::string, std::string> tags_;
};

/// Optional side outputs of a run.
inline constexpr std::size_t kFullCorpus = static_cast<std::size_t>(-1);

struct RunSink {
  std::optional<std::filesystem::path> vote_log_dir;
  std::optional<std::filesystem::path> model_dir;
};

/// Seed for training the members of fold `fold` (cross-platform runs use
/// kFullCorpus). Depends only on the run seed and the fold, so identical
/// member specs train to identical models.
std::uint64_t training_seed(std::uint64_t run_seed, std::size_t fold);
/// Base seed of the per-document tie-break streams for one fold.
std::uint64_t vote_seed(std::uint64_t run_seed, std::size_t fold);

/// k-fold within-domain run: for every fold, train each member on the other
/// folds and evaluate the ensemble on the held-out fold. Returns k fold rows
/// followed by their unweighted mean row.
std::vector<ExperimentResult> run_within_domain(const ExperimentConfig& config,
                                                const CorpusStore& corpora,
                                                const RunSink& sink = {});

/// Cross-platform run: each member trains once on all of its training
/// corpus, and the ensemble is evaluated on the whole test corpus.
ExperimentResult run_cross_platform(const ExperimentConfig& config, const CorpusStore& corpora,
                                    const RunSink& sink = {});

/// Fraction of `test` documents whose normalized text occurs in any of
/// `training`.
double text_overlap(const Corpus& test, std::span<const Corpus* const> training);

/// Mean within-domain accuracy / macro-F1 of one candidate on one corpus.
struct SelectionScore {
  ClassifierSpec spec;
  double mean_accuracy = 0.0;
  double mean_macro_f1 = 0.0;
  std::size_t folds = 0;
};

/// Per corpus, the member spec with the highest mean fold accuracy; ties go
/// to the higher mean macro-F1, then to the earlier family. Only fold rows
/// of within-domain results are used. When `required_corpora` or
/// `required_families` are given, every pair must be covered or Error is
/// thrown listing the missing pairs.
std::map<std::string, ClassifierSpec> best_member_per_corpus(
    std::span<const ExperimentResult> within_results,
    std::span<const std::string> required_corpora = {},
    std::span<const Family> required_families = {});

std::vector<SelectionScore> selection_scores(std::span<const ExperimentResult> within_results,
                                             const std::string& corpus);

/// Results of running one or more grid experiments.
struct GridOutcome {
  std::vector<ExperimentResult> results;
  /// Within-domain rows computed only to resolve best@ members.
  std::vector<ExperimentResult> selection_results;
  std::map<std::string, ClassifierSpec> selected;
};

/// Runs the named experiments ("within", "rq21", "rq22"; "all" = every
/// experiment of `grids` in order). Rows are ordered by the grid
/// definition, independent of `config.jobs`.
GridOutcome run_grid(const RunConfig& config, const GridDefinition& grids,
                     const std::vector<std::string>& experiments, const CorpusStore& corpora,
                     const RunSink& sink = {});

/// Checks, before any training, that every selected experiment can run:
/// all referenced corpora are configured. Throws one ConfigError listing
/// every problem.
void validate_grid_run(const RunConfig& config, const GridDefinition& grids,
                       const std::vector<std::string>& experiments);

/// Expands "all" and checks experiment names exist.
std::vector<std::string> resolve_experiments(const GridDefinition& grids, const std::string& which);

}  // namespace sevote
