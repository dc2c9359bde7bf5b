#include "sevote/ensemble.hpp"

#include <algorithm>
#include <ostream>
#include <thread>

#include "sevote/csv.hpp"

namespace sevote {

bool is_valid_run_id(std::string_view id) noexcept {
  auto dot = id.find('.');
  if (dot == std::string_view::npos || dot == 0 || dot + 1 == id.size()) return false;
  auto digits = [](std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  return digits(id.substr(0, dot)) && digits(id.substr(dot + 1));
}

void EnsembleSpec::validate() const {
  if (members.size() < 3 || members.size() % 2 == 0) {
    throw ConfigError("an ensemble needs an odd number of at least 3 members, got " +
                      std::to_string(members.size()));
  }
  for (const auto& m : members) m.validate();
  if (!is_valid_run_id(id)) throw ConfigError("invalid run id '" + id + "' (expected <grid>.<usage>)");
}

VoteOutcome majority_vote(std::span<const Polarity> labels, Rng& rng) {
  if (labels.empty() || labels.size() % 2 == 0) {
    throw Error("majority vote needs an odd, non-empty label list (got " +
                std::to_string(labels.size()) + ")");
  }
  std::array<std::size_t, kNumPolarities> votes{};
  for (Polarity p : labels) ++votes[index_of(p)];
  const std::size_t top = *std::max_element(votes.begin(), votes.end());

  std::array<Polarity, kNumPolarities> tied{};
  std::size_t n_tied = 0;
  for (Polarity p : kPolarities) {
    if (votes[index_of(p)] == top) tied[n_tied++] = p;
  }
  if (n_tied == 1) return {tied[0], false};
  return {tied[rng.uniform_index(n_tied)], true};
}

EnsemblePrediction combine_votes(std::vector<Polarity> votes, Rng& rng) {
  EnsemblePrediction pred;
  auto outcome = majority_vote(votes, rng);
  pred.final_label = outcome.label;
  pred.tie_broken_randomly = outcome.tie_broken;
  std::array<std::size_t, kNumPolarities> counts{};
  for (Polarity p : votes) ++counts[index_of(p)];
  pred.all_disagree = std::all_of(counts.begin(), counts.end(), [](std::size_t c) { return c <= 1; });
  pred.votes = std::move(votes);
  return pred;
}

VotingClassifier::VotingClassifier(std::vector<ClassifierModel> members)
    : members_(std::move(members)) {
  if (members_.size() < 3 || members_.size() % 2 == 0) {
    throw ConfigError("an ensemble needs an odd number of at least 3 members, got " +
                      std::to_string(members_.size()));
  }
}

EnsemblePrediction VotingClassifier::predict(const Document& doc, Rng& rng) const {
  return ensemble_predict(members_, doc, rng);
}

std::vector<EnsemblePrediction> VotingClassifier::predict_all(std::span<const Document> docs,
                                                              std::uint64_t seed,
                                                              unsigned threads) const {
  std::vector<EnsemblePrediction> out(docs.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Rng rng = Rng::for_stream(seed, i);
      out[i] = predict(docs[i], rng);
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(docs.size())));
  if (threads <= 1) {
    work(0, docs.size());
    return out;
  }
  {
    std::vector<std::jthread> workers;
    const std::size_t chunk = (docs.size() + threads - 1) / threads;
    for (std::size_t begin = 0; begin < docs.size(); begin += chunk) {
      workers.emplace_back(work, begin, std::min(docs.size(), begin + chunk));
    }
  }
  return out;
}

EnsemblePrediction ensemble_predict(std::span<const ClassifierModel> models, const Document& doc,
                                    Rng& rng) {
  std::vector<Polarity> votes;
  votes.reserve(models.size());
  for (const auto& m : models) votes.push_back(m.predict(doc));
  return combine_votes(std::move(votes), rng);
}

double disagreement_rate(std::span<const EnsemblePrediction> predictions) {
  if (predictions.empty()) throw Error("disagreement rate of an empty prediction list");
  auto n = std::count_if(predictions.begin(), predictions.end(),
                         [](const EnsemblePrediction& p) { return p.all_disagree; });
  return static_cast<double>(n) / static_cast<double>(predictions.size());
}

void write_vote_log(std::ostream& out, std::span<const Document> docs,
                    std::span<const EnsemblePrediction> predictions) {
  if (docs.size() != predictions.size()) throw Error("vote log: document/prediction count mismatch");
  std::size_t members = predictions.empty() ? 3 : predictions.front().votes.size();
  out << "doc_id";
  for (std::size_t m = 1; m <= members; ++m) out << ",member" << m;
  out << ",final,tie\n";
  for (std::size_t i = 0; i < docs.size(); ++i) {
    csv::write_field(out, docs[i].id);
    for (Polarity p : predictions[i].votes) out << ',' << to_string(p);
    out << ',' << to_string(predictions[i].final_label) << ','
        << (predictions[i].tie_broken_randomly ? "true" : "false") << '\n';
  }
}

}  // namespace sevote
