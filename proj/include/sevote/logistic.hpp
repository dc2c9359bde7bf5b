#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "sevote/corpus.hpp"
#include "sevote/features.hpp"

namespace sevote {

struct LogisticOptions {
  int epochs = 20;
  double learning_rate = 0.1;  // epoch e uses learning_rate / (1 + e)
  double l2 = 1e-4;
  std::size_t min_df = 1;
  bool record_loss = false;  // fill LogisticFit::loss_history
};

/// Multinomial softmax regression over unigram counts.
class LogisticModel {
 public:
  LogisticModel() = default;
  LogisticModel(Vocabulary vocab, std::vector<double> weights,
                std::array<double, kNumPolarities> bias);

  std::array<double, kNumPolarities> scores(const FeatureVector& fv) const;
  std::array<double, kNumPolarities> probabilities(const FeatureVector& fv) const;
  Polarity predict(std::string_view text) const;

  double weight(Polarity c, std::size_t token) const {
    return weights_[index_of(c) * vocab_.size() + token];
  }
  const std::vector<double>& weights() const noexcept { return weights_; }
  const std::array<double, kNumPolarities>& bias() const noexcept { return bias_; }
  const Vocabulary& vocabulary() const noexcept { return vocab_; }

  friend bool operator==(const LogisticModel&, const LogisticModel&) = default;

 private:
  Vocabulary vocab_;
  std::vector<double> weights_;  // [class][token], row-major
  std::array<double, kNumPolarities> bias_{};
};

struct LogisticFit {
  LogisticModel model;
  /// Regularized mean training loss before the first epoch and after each
  /// epoch (epochs + 1 values). Empty unless options.record_loss.
  std::vector<double> loss_history;
};

/// Plain SGD, one example per step, examples reshuffled every epoch by an
/// Rng seeded with `seed`. L2 decay is applied to the whole weight matrix
/// every step through a shared scale factor, so a step costs O(nnz).
/// Throws DegenerateTrainingError when fewer than two classes are present.
LogisticFit fit_logistic(std::span<const Document> docs, const LogisticOptions& options,
                         std::uint64_t seed);

/// Softmax cross-entropy averaged over `docs` plus (l2/2)·||W||².
double logistic_loss(const LogisticModel& model, std::span<const Document> docs, double l2);

}  // namespace sevote
