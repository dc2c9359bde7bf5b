#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sevote/classifier.hpp"
#include "sevote/corpus.hpp"
#include "sevote/ensemble.hpp"

namespace sevote {

enum class ExperimentMode { WithinDomain, CrossPlatform };

std::string_view to_string(ExperimentMode mode) noexcept;
std::optional<ExperimentMode> parse_mode(std::string_view text) noexcept;

/// One fully resolved run: an ensemble, the corpus it is tested on, and how.
struct ExperimentConfig {
  std::string grid_id;
  std::string experiment;  // name of the grid experiment this run belongs to
  EnsembleSpec ensemble;   // ensemble.id is the run id "<grid_id>.<usage>"
  std::string test_corpus;
  ExperimentMode mode = ExperimentMode::WithinDomain;
  std::size_t k = 5;
  std::uint64_t seed = 0;

  /// Throws ConfigError: WithinDomain members must train on the test corpus
  /// (Lexicon members may say "none"); CrossPlatform members must not.
  void validate() const;
};

/// Member slot of a grid template. An empty family means "the best family
/// for training_corpus", resolved from within-domain results.
struct MemberTemplate {
  std::optional<Family> family;
  std::string training_corpus;
  Hyperparameters params;
};

struct GridTemplate {
  std::string grid_id;
  std::vector<MemberTemplate> members;
  std::vector<std::string> test_corpora;  // usage n tests test_corpora[n-1]
};

enum class RowOrder { ByGrid, ByUsage };

struct GridExperiment {
  std::string name;
  std::string title;
  ExperimentMode mode = ExperimentMode::WithinDomain;
  RowOrder order = RowOrder::ByGrid;
  std::vector<GridTemplate> grids;

  /// Expands the templates into runs in report order (ByGrid: 6.1, 6.2,
  /// 7.1, ...; ByUsage: 6.1, 7.1, ..., 6.2, 7.2, ...). best@X members are
  /// looked up in `best`; a missing entry throws ConfigError.
  std::vector<ExperimentConfig> expand(std::size_t k, std::uint64_t seed,
                                       const std::map<std::string, ClassifierSpec>& best = {}) const;
  /// Corpora that best@ members refer to.
  std::vector<std::string> needs_selection() const;
  /// Every corpus named by the templates.
  std::vector<std::string> referenced_corpora() const;
};

/// Named experiment grids, loaded from YAML:
///
///   experiments:
///     - name: rq21
///       title: ...
///       mode: cross            # within | cross
///       order: usage           # grid | usage
///       grids:
///         - id: 6
///           members: [logistic@GitHub, naive_bayes@StackOverflow, lexicon@JIRA]
///           test: [API, APP]
///
/// A member is `<family>@<corpus>` or `best@<corpus>`; `params:` on a grid
/// overrides hyperparameters for all its members.
struct GridDefinition {
  std::vector<GridExperiment> experiments;

  static GridDefinition parse(std::string_view yaml);
  static GridDefinition load(const std::filesystem::path& path);
  /// The shipped definitions (data/grids.yaml, embedded at build time).
  static GridDefinition builtin();

  const GridExperiment* find(std::string_view name) const;
};

std::string_view builtin_grid_yaml() noexcept;

struct CorpusSource {
  std::string name;
  std::string tag;  // short label used in reports (G, J, SO, ...)
  std::filesystem::path path;
  std::optional<ExpectedDistribution> expect;
};

/// Run-grid configuration file (YAML):
///
///   seed: 42
///   folds: 5
///   output: results
///   grids: my_grids.yaml     # optional, defaults to the built-in grids
///   jobs: 1
///   vote_logs: false
///   save_models: false
///   corpora:
///     - name: GitHub
///       tag: G
///       path: github.csv     # relative to the config file
///       expect: reference    # or [total, positive, neutral, negative]
///
/// Every problem found is collected; load/parse throw one ConfigError that
/// lists all of them.
struct RunConfig {
  std::uint64_t seed = 0;
  std::size_t folds = 5;
  std::filesystem::path output_dir = "results";
  std::optional<std::filesystem::path> grid_file;
  unsigned jobs = 1;
  bool vote_logs = false;
  bool save_models = false;
  std::vector<CorpusSource> corpora;

  static RunConfig parse(std::string_view yaml, const std::filesystem::path& base_dir);
  static RunConfig load(const std::filesystem::path& path);

  const CorpusSource* corpus(std::string_view name) const;
  /// Tag of a corpus, or its name when no tag is configured.
  std::string tag_of(std::string_view name) const;
};

}  // namespace sevote
