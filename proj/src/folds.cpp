#include "sevote/folds.hpp"

#include "sevote/rng.hpp"

namespace sevote {

FoldPlan stratified_kfold(const Corpus& corpus, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw Error("k-fold needs k >= 2");
  if (k > corpus.size()) {
    throw Error("k = " + std::to_string(k) + " exceeds corpus size " + std::to_string(corpus.size()));
  }

  std::array<std::vector<std::size_t>, kNumPolarities> by_class;
  for (std::size_t i = 0; i < corpus.size(); ++i) by_class[index_of(corpus[i].label)].push_back(i);

  FoldPlan plan{k, seed, std::vector<std::size_t>(corpus.size())};
  Rng rng(seed);
  std::size_t next_fold = 0;
  for (auto& members : by_class) {
    rng.shuffle(std::span<std::size_t>(members));
    for (std::size_t idx : members) {
      plan.fold_of[idx] = next_fold;
      next_fold = (next_fold + 1) % k;
    }
  }
  return plan;
}

std::vector<std::size_t> FoldPlan::test_indices(std::size_t f) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold_of.size(); ++i) {
    if (fold_of[i] == f) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FoldPlan::train_indices(std::size_t f) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold_of.size(); ++i) {
    if (fold_of[i] != f) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FoldPlan::fold_sizes() const {
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t f : fold_of) ++sizes[f];
  return sizes;
}

std::vector<Document> select(const Corpus& corpus, const std::vector<std::size_t>& indices) {
  std::vector<Document> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(corpus[i]);
  return out;
}

}  // namespace sevote
