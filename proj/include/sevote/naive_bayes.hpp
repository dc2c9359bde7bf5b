#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "sevote/corpus.hpp"
#include "sevote/features.hpp"

namespace sevote {

/// Multinomial naive Bayes over unigram counts with additive (Laplace)
/// smoothing. Classes absent from training get a log prior of -inf and are
/// never predicted.
class NaiveBayesModel {
 public:
  NaiveBayesModel() = default;
  NaiveBayesModel(Vocabulary vocab, std::array<double, kNumPolarities> log_prior,
                  std::vector<double> log_likelihood, double alpha);

  /// Throws Error on an empty training set.
  static NaiveBayesModel train(std::span<const Document> docs, double alpha = 1.0,
                               std::size_t min_df = 1);

  /// Unnormalized joint log scores log P(c) + sum_w n_w log P(w|c).
  std::array<double, kNumPolarities> joint_log_scores(const FeatureVector& fv) const;
  /// Posterior class probabilities via log-sum-exp.
  std::array<double, kNumPolarities> posterior(const FeatureVector& fv) const;
  Polarity predict(std::string_view text) const;

  double log_likelihood(Polarity c, std::size_t token) const {
    return log_likelihood_[index_of(c) * vocab_.size() + token];
  }
  const std::array<double, kNumPolarities>& log_prior() const noexcept { return log_prior_; }
  const std::vector<double>& log_likelihoods() const noexcept { return log_likelihood_; }
  const Vocabulary& vocabulary() const noexcept { return vocab_; }
  double alpha() const noexcept { return alpha_; }

  friend bool operator==(const NaiveBayesModel&, const NaiveBayesModel&) = default;

 private:
  Vocabulary vocab_;
  std::array<double, kNumPolarities> log_prior_{};
  std::vector<double> log_likelihood_;  // [class][token], row-major
  double alpha_ = 1.0;
};

}  // namespace sevote
