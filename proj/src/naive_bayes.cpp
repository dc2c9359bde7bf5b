#include "sevote/naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sevote {

NaiveBayesModel::NaiveBayesModel(Vocabulary vocab, std::array<double, kNumPolarities> log_prior,
                                 std::vector<double> log_likelihood, double alpha)
    : vocab_(std::move(vocab)),
      log_prior_(log_prior),
      log_likelihood_(std::move(log_likelihood)),
      alpha_(alpha) {
  if (log_likelihood_.size() != kNumPolarities * vocab_.size()) {
    throw Error("naive Bayes likelihood table does not match vocabulary size");
  }
}

NaiveBayesModel NaiveBayesModel::train(std::span<const Document> docs, double alpha,
                                       std::size_t min_df) {
  if (docs.empty()) throw Error("naive Bayes: empty training set");
  if (!(alpha > 0.0)) throw Error("naive Bayes: alpha must be positive");

  Vocabulary vocab = Vocabulary::build(docs, min_df);
  const std::size_t v = vocab.size();

  std::array<double, kNumPolarities> class_docs{};
  std::vector<double> counts(kNumPolarities * v, 0.0);
  std::array<double, kNumPolarities> class_tokens{};
  for (const auto& doc : docs) {
    const std::size_t c = index_of(doc.label);
    class_docs[c] += 1.0;
    for (auto [token, n] : vectorize(doc, vocab).entries) {
      counts[c * v + token] += n;
      class_tokens[c] += n;
    }
  }

  std::array<double, kNumPolarities> log_prior{};
  std::vector<double> log_likelihood(kNumPolarities * v);
  const double n_docs = static_cast<double>(docs.size());
  for (std::size_t c = 0; c < kNumPolarities; ++c) {
    log_prior[c] = class_docs[c] > 0 ? std::log(class_docs[c] / n_docs)
                                     : -std::numeric_limits<double>::infinity();
    const double denom = std::log(class_tokens[c] + alpha * static_cast<double>(v));
    for (std::size_t t = 0; t < v; ++t) {
      log_likelihood[c * v + t] = std::log(counts[c * v + t] + alpha) - denom;
    }
  }
  return NaiveBayesModel(std::move(vocab), log_prior, std::move(log_likelihood), alpha);
}

std::array<double, kNumPolarities> NaiveBayesModel::joint_log_scores(const FeatureVector& fv) const {
  std::array<double, kNumPolarities> s = log_prior_;
  const std::size_t v = vocab_.size();
  for (std::size_t c = 0; c < kNumPolarities; ++c) {
    if (std::isinf(s[c])) continue;
    const double* row = log_likelihood_.data() + c * v;
    for (auto [token, n] : fv.entries) s[c] += static_cast<double>(n) * row[token];
  }
  return s;
}

std::array<double, kNumPolarities> NaiveBayesModel::posterior(const FeatureVector& fv) const {
  auto s = joint_log_scores(fv);
  const double top = *std::max_element(s.begin(), s.end());
  double sum = 0.0;
  for (double x : s) sum += std::exp(x - top);
  const double log_norm = top + std::log(sum);
  std::array<double, kNumPolarities> p{};
  for (std::size_t c = 0; c < kNumPolarities; ++c) p[c] = std::exp(s[c] - log_norm);
  return p;
}

Polarity NaiveBayesModel::predict(std::string_view text) const {
  auto s = joint_log_scores(vectorize(text, vocab_));
  // max_element keeps the first maximum: fixed Positive < Neutral < Negative order.
  return polarity_at(static_cast<std::size_t>(std::max_element(s.begin(), s.end()) - s.begin()));
}

}  // namespace sevote
