#include "sevote/logistic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sevote/rng.hpp"

namespace sevote {
namespace {

std::array<double, kNumPolarities> softmax(std::array<double, kNumPolarities> z) {
  const double top = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double& x : z) {
    x = std::exp(x - top);
    sum += x;
  }
  for (double& x : z) x /= sum;
  return z;
}

// Weights stored as scale * raw so that uniform L2 shrinkage is O(1).
struct ScaledWeights {
  std::size_t vocab_size;
  std::vector<double> raw;
  double scale = 1.0;

  void shrink(double factor) {
    scale *= factor;
    if (scale < 1e-9) {
      for (double& w : raw) w *= scale;
      scale = 1.0;
    }
  }

  std::vector<double> materialize() const {
    std::vector<double> w(raw.size());
    std::transform(raw.begin(), raw.end(), w.begin(), [this](double x) { return x * scale; });
    return w;
  }
};

}  // namespace

LogisticModel::LogisticModel(Vocabulary vocab, std::vector<double> weights,
                             std::array<double, kNumPolarities> bias)
    : vocab_(std::move(vocab)), weights_(std::move(weights)), bias_(bias) {
  if (weights_.size() != kNumPolarities * vocab_.size()) {
    throw Error("logistic weight matrix does not match vocabulary size");
  }
}

std::array<double, kNumPolarities> LogisticModel::scores(const FeatureVector& fv) const {
  std::array<double, kNumPolarities> z = bias_;
  const std::size_t v = vocab_.size();
  for (std::size_t c = 0; c < kNumPolarities; ++c) {
    const double* row = weights_.data() + c * v;
    for (auto [token, n] : fv.entries) z[c] += static_cast<double>(n) * row[token];
  }
  return z;
}

std::array<double, kNumPolarities> LogisticModel::probabilities(const FeatureVector& fv) const {
  return softmax(scores(fv));
}

Polarity LogisticModel::predict(std::string_view text) const {
  auto z = scores(vectorize(text, vocab_));
  return polarity_at(static_cast<std::size_t>(std::max_element(z.begin(), z.end()) - z.begin()));
}

double logistic_loss(const LogisticModel& model, std::span<const Document> docs, double l2) {
  double nll = 0.0;
  for (const auto& doc : docs) {
    auto z = model.scores(vectorize(doc, model.vocabulary()));
    const double top = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (double x : z) sum += std::exp(x - top);
    nll += top + std::log(sum) - z[index_of(doc.label)];
  }
  double norm = 0.0;
  for (double w : model.weights()) norm += w * w;
  return nll / static_cast<double>(docs.size()) + 0.5 * l2 * norm;
}

LogisticFit fit_logistic(std::span<const Document> docs, const LogisticOptions& options,
                         std::uint64_t seed) {
  if (docs.empty()) throw Error("logistic regression: empty training set");
  {
    bool seen[kNumPolarities] = {};
    for (const auto& d : docs) seen[index_of(d.label)] = true;
    if (std::count(std::begin(seen), std::end(seen), true) < 2) {
      throw DegenerateTrainingError("logistic regression needs at least two classes in training data");
    }
  }
  if (options.epochs < 0 || !(options.learning_rate > 0.0) || options.l2 < 0.0) {
    throw Error("logistic regression: invalid options");
  }

  Vocabulary vocab = Vocabulary::build(docs, options.min_df);
  const std::size_t v = vocab.size();
  std::vector<FeatureVector> features;
  features.reserve(docs.size());
  for (const auto& d : docs) features.push_back(vectorize(d, vocab));

  ScaledWeights w{v, std::vector<double>(kNumPolarities * v, 0.0)};
  std::array<double, kNumPolarities> bias{};

  LogisticFit fit;
  auto snapshot = [&] { return LogisticModel(vocab, w.materialize(), bias); };
  if (options.record_loss) fit.loss_history.push_back(logistic_loss(snapshot(), docs, options.l2));

  std::vector<std::size_t> order(docs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);

  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    const double lr = options.learning_rate / (1.0 + epoch);
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t i : order) {
      const auto& fv = features[i];
      std::array<double, kNumPolarities> z = bias;
      for (std::size_t c = 0; c < kNumPolarities; ++c) {
        const double* row = w.raw.data() + c * v;
        double dot = 0.0;
        for (auto [token, n] : fv.entries) dot += static_cast<double>(n) * row[token];
        z[c] += w.scale * dot;
      }
      auto p = softmax(z);
      p[index_of(docs[i].label)] -= 1.0;  // gradient of the loss w.r.t. z

      w.shrink(1.0 - lr * options.l2);
      for (std::size_t c = 0; c < kNumPolarities; ++c) {
        const double step = lr * p[c] / w.scale;
        double* row = w.raw.data() + c * v;
        for (auto [token, n] : fv.entries) row[token] -= step * static_cast<double>(n);
        bias[c] -= lr * p[c];
      }
    }
    if (options.record_loss) fit.loss_history.push_back(logistic_loss(snapshot(), docs, options.l2));
  }

  fit.model = snapshot();
  return fit;
}

}  // namespace sevote
