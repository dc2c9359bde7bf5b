#include "sevote/experiment_config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace sevote {

std::string_view to_string(ExperimentMode mode) noexcept {
  return mode == ExperimentMode::WithinDomain ? "within" : "cross";
}

std::optional<ExperimentMode> parse_mode(std::string_view text) noexcept {
  if (text == "within" || text == "within_domain") return ExperimentMode::WithinDomain;
  if (text == "cross" || text == "cross_platform") return ExperimentMode::CrossPlatform;
  return std::nullopt;
}

void ExperimentConfig::validate() const {
  ensemble.validate();
  if (test_corpus.empty()) throw ConfigError("run " + ensemble.id + ": no test corpus");
  for (std::size_t i = 0; i < ensemble.members.size(); ++i) {
    const auto& m = ensemble.members[i];
    const std::string where = "run " + ensemble.id + " member " + std::to_string(i + 1) + ": ";
    if (mode == ExperimentMode::WithinDomain) {
      bool training_free = m.family == Family::Lexicon && m.training_corpus == "none";
      if (m.training_corpus != test_corpus && !training_free) {
        throw ConfigError(where + "within-domain member trained on '" + m.training_corpus +
                          "' instead of test corpus '" + test_corpus + "'");
      }
    } else if (m.training_corpus == test_corpus) {
      throw ConfigError(where + "cross-platform member is trained on its test corpus '" +
                        test_corpus + "'");
    }
  }
  if (mode == ExperimentMode::WithinDomain && k < 2) {
    throw ConfigError("run " + ensemble.id + ": k must be at least 2");
  }
}

std::vector<ExperimentConfig> GridExperiment::expand(
    std::size_t k, std::uint64_t seed, const std::map<std::string, ClassifierSpec>& best) const {
  auto make = [&](const GridTemplate& g, std::size_t usage) {
    ExperimentConfig cfg;
    cfg.grid_id = g.grid_id;
    cfg.experiment = name;
    cfg.mode = mode;
    cfg.k = k;
    cfg.seed = seed;
    cfg.test_corpus = g.test_corpora[usage];
    cfg.ensemble.id = g.grid_id + "." + std::to_string(usage + 1);
    for (const auto& m : g.members) {
      ClassifierSpec spec;
      if (m.family) {
        spec.family = *m.family;
        spec.params = m.params;
      } else {
        auto it = best.find(m.training_corpus);
        if (it == best.end()) {
          throw ConfigError("grid " + g.grid_id + ": no best family selected for '" +
                            m.training_corpus + "'");
        }
        spec = it->second;
      }
      spec.training_corpus = m.training_corpus;
      cfg.ensemble.members.push_back(std::move(spec));
    }
    return cfg;
  };

  std::vector<ExperimentConfig> out;
  if (order == RowOrder::ByGrid) {
    for (const auto& g : grids) {
      for (std::size_t u = 0; u < g.test_corpora.size(); ++u) out.push_back(make(g, u));
    }
  } else {
    std::size_t max_usage = 0;
    for (const auto& g : grids) max_usage = std::max(max_usage, g.test_corpora.size());
    for (std::size_t u = 0; u < max_usage; ++u) {
      for (const auto& g : grids) {
        if (u < g.test_corpora.size()) out.push_back(make(g, u));
      }
    }
  }
  return out;
}

std::vector<std::string> GridExperiment::needs_selection() const {
  std::vector<std::string> out;
  for (const auto& g : grids) {
    for (const auto& m : g.members) {
      if (!m.family && std::find(out.begin(), out.end(), m.training_corpus) == out.end()) {
        out.push_back(m.training_corpus);
      }
    }
  }
  return out;
}

std::vector<std::string> GridExperiment::referenced_corpora() const {
  std::vector<std::string> out;
  auto add = [&out](const std::string& name) {
    if (name != "none" && std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
  };
  for (const auto& g : grids) {
    for (const auto& m : g.members) add(m.training_corpus);
    for (const auto& t : g.test_corpora) add(t);
  }
  return out;
}

namespace {

std::string scalar_or(const YAML::Node& node, const std::string& fallback) {
  return node && node.IsScalar() ? node.as<std::string>() : fallback;
}

Hyperparameters parse_params(const YAML::Node& node, const std::string& where,
                             std::vector<std::string>& problems) {
  Hyperparameters p;
  if (!node) return p;
  if (!node.IsMap()) {
    problems.push_back(where + ": params must be a mapping");
    return p;
  }
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    try {
      if (key == "alpha") p.alpha = kv.second.as<double>();
      else if (key == "epochs") p.epochs = kv.second.as<int>();
      else if (key == "learning_rate") p.learning_rate = kv.second.as<double>();
      else if (key == "l2") p.l2 = kv.second.as<double>();
      else if (key == "min_df") p.min_df = kv.second.as<std::size_t>();
      else problems.push_back(where + ": unknown parameter '" + key + "'");
    } catch (const YAML::Exception&) {
      problems.push_back(where + ": bad value for parameter '" + key + "'");
    }
  }
  return p;
}

void throw_if_problems(const std::vector<std::string>& problems, const std::string& what) {
  if (problems.empty()) return;
  std::string msg = what + " has " + std::to_string(problems.size()) + " problem(s):";
  for (const auto& p : problems) msg += "\n  - " + p;
  throw ConfigError(msg);
}

YAML::Node parse_yaml(std::string_view text, const std::string& what) {
  try {
    return YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

std::string read_file(const std::filesystem::path& path, const std::string& what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + what + " '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

GridDefinition GridDefinition::parse(std::string_view yaml) {
  YAML::Node root = parse_yaml(yaml, "grid definition");
  std::vector<std::string> problems;
  GridDefinition def;
  const YAML::Node experiments = root["experiments"];
  if (!experiments || !experiments.IsSequence()) {
    throw ConfigError("grid definition: missing 'experiments' list");
  }
  std::set<std::string> names, grid_ids;
  for (const auto& node : experiments) {
    GridExperiment exp;
    exp.name = scalar_or(node["name"], "");
    const std::string where = "experiment '" + exp.name + "'";
    if (exp.name.empty()) problems.push_back("experiment without a name");
    if (!names.insert(exp.name).second) problems.push_back("duplicate " + where);
    exp.title = scalar_or(node["title"], exp.name);
    auto mode = parse_mode(scalar_or(node["mode"], ""));
    if (!mode) problems.push_back(where + ": mode must be 'within' or 'cross'");
    else exp.mode = *mode;
    const std::string order = scalar_or(node["order"], "grid");
    if (order == "grid") exp.order = RowOrder::ByGrid;
    else if (order == "usage") exp.order = RowOrder::ByUsage;
    else problems.push_back(where + ": order must be 'grid' or 'usage'");
    const YAML::Node grids = node["grids"];
    if (!grids || !grids.IsSequence() || grids.size() == 0) {
      problems.push_back(where + ": missing 'grids' list");
      def.experiments.push_back(std::move(exp));
      continue;
    }
    for (const auto& g : grids) {
      GridTemplate t;
      t.grid_id = scalar_or(g["id"], "");
      const std::string gw = where + " grid '" + t.grid_id + "'";
      if (t.grid_id.empty() || !std::all_of(t.grid_id.begin(), t.grid_id.end(), ::isdigit)) {
        problems.push_back(gw + ": id must be a non-negative integer");
      }
      if (!grid_ids.insert(t.grid_id).second) problems.push_back(gw + ": duplicate grid id");
      Hyperparameters params = parse_params(g["params"], gw, problems);
      const YAML::Node members = g["members"];
      if (!members || !members.IsSequence()) {
        problems.push_back(gw + ": missing 'members' list");
      } else {
        for (const auto& m : members) {
          const std::string text = m.as<std::string>();
          const auto at = text.find('@');
          if (at == std::string::npos || at == 0 || at + 1 == text.size()) {
            problems.push_back(gw + ": member '" + text + "' is not <family>@<corpus>");
            continue;
          }
          MemberTemplate mt;
          mt.training_corpus = text.substr(at + 1);
          mt.params = params;
          const std::string fam = text.substr(0, at);
          if (fam != "best") {
            mt.family = parse_family(fam);
            if (!mt.family) problems.push_back(gw + ": unknown family '" + fam + "'");
          }
          t.members.push_back(std::move(mt));
        }
        if (t.members.size() < 3 || t.members.size() % 2 == 0) {
          problems.push_back(gw + ": needs an odd number of at least 3 members");
        }
      }
      const YAML::Node tests = g["test"];
      if (!tests || !tests.IsSequence() || tests.size() == 0) {
        problems.push_back(gw + ": missing 'test' list");
      } else {
        for (const auto& tc : tests) t.test_corpora.push_back(tc.as<std::string>());
      }
      for (const auto& tc : t.test_corpora) {
        for (const auto& m : t.members) {
          bool same = m.training_corpus == tc;
          if (exp.mode == ExperimentMode::CrossPlatform && same) {
            problems.push_back(gw + ": member trained on test corpus '" + tc + "'");
          }
          if (exp.mode == ExperimentMode::WithinDomain && !same && m.training_corpus != "none") {
            problems.push_back(gw + ": within-domain member trained on '" + m.training_corpus +
                               "' but tested on '" + tc + "'");
          }
          if (exp.mode == ExperimentMode::WithinDomain && !m.family) {
            problems.push_back(gw + ": best@ members are only allowed in cross experiments");
          }
        }
      }
      exp.grids.push_back(std::move(t));
    }
    def.experiments.push_back(std::move(exp));
  }
  throw_if_problems(problems, "grid definition");
  return def;
}

GridDefinition GridDefinition::load(const std::filesystem::path& path) {
  return parse(read_file(path, "grid file"));
}

GridDefinition GridDefinition::builtin() { return parse(builtin_grid_yaml()); }

const GridExperiment* GridDefinition::find(std::string_view name) const {
  for (const auto& e : experiments) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

RunConfig RunConfig::parse(std::string_view yaml, const std::filesystem::path& base_dir) {
  YAML::Node root = parse_yaml(yaml, "config");
  std::vector<std::string> problems;
  RunConfig cfg;
  if (!root.IsMap()) throw ConfigError("config: expected a mapping at top level");

  static const std::set<std::string> known = {"seed", "folds", "output", "grids", "jobs",
                                              "vote_logs", "save_models", "corpora"};
  for (const auto& kv : root) {
    auto key = kv.first.as<std::string>();
    if (!known.count(key)) problems.push_back("unknown key '" + key + "'");
  }

  auto get = [&](const char* key, auto& target) {
    if (!root[key]) return;
    try {
      target = root[key].as<std::decay_t<decltype(target)>>();
    } catch (const YAML::Exception&) {
      problems.push_back(std::string("bad value for '") + key + "'");
    }
  };
  if (!root["seed"]) problems.push_back("missing required key 'seed'");
  get("seed", cfg.seed);
  get("folds", cfg.folds);
  get("jobs", cfg.jobs);
  get("vote_logs", cfg.vote_logs);
  get("save_models", cfg.save_models);
  if (cfg.folds < 2) problems.push_back("folds must be at least 2");
  if (cfg.jobs < 1) problems.push_back("jobs must be at least 1");
  if (root["output"]) cfg.output_dir = base_dir / root["output"].as<std::string>();
  else cfg.output_dir = base_dir / "results";
  if (root["grids"]) {
    cfg.grid_file = base_dir / root["grids"].as<std::string>();
    if (!std::filesystem::exists(*cfg.grid_file)) {
      problems.push_back("grid file '" + cfg.grid_file->string() + "' does not exist");
    }
  }

  const YAML::Node corpora = root["corpora"];
  if (!corpora || !corpora.IsSequence() || corpora.size() == 0) {
    problems.push_back("missing 'corpora' list");
  } else {
    std::set<std::string> names;
    for (const auto& c : corpora) {
      CorpusSource src;
      src.name = scalar_or(c["name"], "");
      const std::string where = "corpus '" + src.name + "'";
      if (src.name.empty()) {
        problems.push_back("corpus entry without a name");
        continue;
      }
      if (!names.insert(src.name).second) problems.push_back("duplicate " + where);
      src.tag = scalar_or(c["tag"], src.name);
      if (!c["path"]) {
        problems.push_back(where + ": missing path");
      } else {
        src.path = base_dir / c["path"].as<std::string>();
        if (!std::filesystem::exists(src.path)) {
          problems.push_back(where + ": file '" + src.path.string() + "' does not exist");
        }
      }
      if (const YAML::Node e = c["expect"]) {
        if (e.IsScalar() && e.as<std::string>() == "reference") {
          src.expect = reference_distribution(src.name);
          if (!src.expect) problems.push_back(where + ": no reference distribution for this name");
        } else if (e.IsSequence() && e.size() == 4) {
          try {
            ExpectedDistribution d;
            d.total = e[0].as<std::size_t>();
            for (std::size_t i = 0; i < kNumPolarities; ++i) d.counts.counts[i] = e[i + 1].as<std::size_t>();
            if (d.counts.total() != d.total) problems.push_back(where + ": expected class counts do not sum to total");
            src.expect = d;
          } catch (const YAML::Exception&) {
            problems.push_back(where + ": expect must hold four non-negative integers");
          }
        } else {
          problems.push_back(where + ": expect must be 'reference' or [total, positive, neutral, negative]");
        }
      }
      cfg.corpora.push_back(std::move(src));
    }
  }
  throw_if_problems(problems, "config");
  return cfg;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  auto text = read_file(path, "config file");
  return parse(text, path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
}

const CorpusSource* RunConfig::corpus(std::string_view name) const {
  for (const auto& c : corpora) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string RunConfig::tag_of(std::string_view name) const {
  const auto* c = corpus(name);
  return c ? c->tag : std::string(name);
}

}  // namespace sevote
