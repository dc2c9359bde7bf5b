#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sevote/classifier.hpp"
#include "sevote/rng.hpp"

namespace sevote {

/// Ensemble definition. `id` is a run identifier of the form
/// "<grid-id>.<usage>", e.g. "2.1".
struct EnsembleSpec {
  std::vector<ClassifierSpec> members;
  std::string id;

  /// Throws ConfigError unless members.size() is odd and >= 3, every member
  /// spec is valid and `id` is digits '.' digits.
  void validate() const;
};

/// True when `id` matches digits '.' digits.
bool is_valid_run_id(std::string_view id) noexcept;

struct VoteOutcome {
  Polarity label;
  bool tie_broken = false;
};

/// Plurality vote. A label with strictly more votes than every other wins
/// outright; otherwise one of the maximally voted labels is drawn uniformly
/// from `rng`. Throws Error for an empty or even-length list.
VoteOutcome majority_vote(std::span<const Polarity> labels, Rng& rng);

struct EnsemblePrediction {
  std::vector<Polarity> votes;  // member order
  Polarity final_label = Polarity::Neutral;
  bool all_disagree = false;        // votes pairwise distinct
  bool tie_broken_randomly = false;  // no strict plurality
};

/// Builds the prediction record for one document's member votes.
EnsemblePrediction combine_votes(std::vector<Polarity> votes, Rng& rng);

/// Majority-vote classifier over an odd number (>= 3) of trained members.
class VotingClassifier {
 public:
  /// Throws ConfigError when the member count is even or below 3.
  explicit VotingClassifier(std::vector<ClassifierModel> members);

  const std::vector<ClassifierModel>& members() const noexcept { return members_; }

  EnsemblePrediction predict(const Document& doc, Rng& rng) const;

  /// Predicts every document; document i draws its tie-break from
  /// Rng::for_stream(seed, i). With threads > 1 the documents are split
  /// across workers and the result is identical to the sequential run.
  std::vector<EnsemblePrediction> predict_all(std::span<const Document> docs, std::uint64_t seed,
                                              unsigned threads = 1) const;

 private:
  std::vector<ClassifierModel> members_;
};

/// Free-function form of VotingClassifier::predict for an ad-hoc member list.
EnsemblePrediction ensemble_predict(std::span<const ClassifierModel> models, const Document& doc,
                                    Rng& rng);

/// Fraction of predictions whose member votes are pairwise distinct.
/// Throws Error on an empty list.
double disagreement_rate(std::span<const EnsemblePrediction> predictions);

/// Per-document vote log: `doc_id,member1,...,memberN,final,tie`.
void write_vote_log(std::ostream& out, std::span<const Document> docs,
                    std::span<const EnsemblePrediction> predictions);

}  // namespace sevote
