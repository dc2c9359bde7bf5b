#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sevote/corpus.hpp"
#include "sevote/lexicon.hpp"
#include "sevote/logistic.hpp"
#include "sevote/naive_bayes.hpp"

namespace sevote {

/// Base classifier family. Declaration order is the fixed tie-break order
/// used when selecting a best family.
enum class Family : std::uint8_t { Lexicon, NaiveBayes, Logistic };

std::string_view to_string(Family f) noexcept;
/// Accepts lexicon, naive_bayes (nb), logistic (lr); case-insensitive.
std::optional<Family> parse_family(std::string_view text) noexcept;

struct Hyperparameters {
  double alpha = 1.0;  // naive Bayes smoothing
  int epochs = 20;
  double learning_rate = 0.1;
  double l2 = 1e-4;
  std::size_t min_df = 1;

  friend bool operator==(const Hyperparameters&, const Hyperparameters&) = default;
};

struct ClassifierSpec {
  Family family = Family::Lexicon;
  Hyperparameters params;
  /// Corpus the member is trained on; "none" is allowed for Lexicon only.
  std::string training_corpus = "none";

  /// Throws ConfigError when the invariants do not hold.
  void validate() const;

  friend bool operator==(const ClassifierSpec&, const ClassifierSpec&) = default;
};

/// A trained base classifier. Immutable; predict is safe to call
/// concurrently.
class ClassifierModel {
 public:
  using State = std::variant<LexiconModel, NaiveBayesModel, LogisticModel>;

  ClassifierModel(ClassifierSpec spec, State state);

  const ClassifierSpec& spec() const noexcept { return spec_; }
  Family family() const noexcept { return spec_.family; }
  const State& state() const noexcept { return state_; }

  Polarity predict(std::string_view text) const;
  Polarity predict(const Document& doc) const { return predict(doc.text); }
  std::vector<Polarity> predict_batch(std::span<const Document> docs) const;

  friend bool operator==(const ClassifierModel&, const ClassifierModel&) = default;

 private:
  ClassifierSpec spec_;
  State state_;
};

/// Trains one model. Deterministic in (spec, document order, seed).
/// Throws Error on an empty training set (except Lexicon, which ignores its
/// input) and DegenerateTrainingError for a one-class Logistic run.
ClassifierModel train(const ClassifierSpec& spec, std::span<const Document> train_docs,
                      std::uint64_t seed);

/// Line-oriented text format:
///
///   sevote-model 1
///   family <lexicon|naive_bayes|logistic>
///   training_corpus <name>
///   alpha|epochs|learning_rate|l2|min_df <value>
///   vocabulary <V>            followed by V lines index<TAB>token<TAB>df
///   ...family parameters...
///   end
///
/// Doubles are written in shortest round-trip form, so a loaded model
/// predicts identically to the saved one.
void write_model(std::ostream& out, const ClassifierModel& model);
ClassifierModel read_model(std::istream& in);
void save_model(const std::filesystem::path& path, const ClassifierModel& model);
ClassifierModel load_model(const std::filesystem::path& path);

}  // namespace sevote
