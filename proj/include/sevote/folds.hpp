#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sevote/corpus.hpp"

namespace sevote {

/// Assignment of every corpus document to one of k folds.
struct FoldPlan {
  std::size_t k = 0;
  std::uint64_t seed = 0;
  /// fold_of[i] is the fold of corpus document i.
  std::vector<std::size_t> fold_of;

  /// Document indices of fold f, ascending.
  std::vector<std::size_t> test_indices(std::size_t f) const;
  /// Document indices outside fold f, ascending.
  std::vector<std::size_t> train_indices(std::size_t f) const;
  std::vector<std::size_t> fold_sizes() const;

  friend bool operator==(const FoldPlan&, const FoldPlan&) = default;
};

/// Shuffles each class independently (classes in Positive, Neutral,
/// Negative order, one Rng seeded with `seed`) and deals the documents
/// round-robin over the folds. The dealing position carries over from one
/// class to the next, so per-class fold counts differ by at most one and
/// total fold sizes differ by at most one.
///
/// Throws Error when k < 2 or k exceeds the corpus size.
FoldPlan stratified_kfold(const Corpus& corpus, std::size_t k, std::uint64_t seed);

/// Documents selected by `indices`, in index order.
std::vector<Document> select(const Corpus& corpus, const std::vector<std::size_t>& indices);

}  // namespace sevote
