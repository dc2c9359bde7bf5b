#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>

#include "sevote/polarity.hpp"

namespace sevote {

/// confusion[gold][predicted].
using ConfusionMatrix = std::array<std::array<std::size_t, kNumPolarities>, kNumPolarities>;

struct ClassScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Classification metrics. A precision, recall or F1 whose denominator is
/// zero is reported as 0, so a class with no gold and no predicted
/// instances contributes F1 = 0 to the macro average.
struct MetricsReport {
  ConfusionMatrix confusion{};
  std::size_t total = 0;
  double accuracy = 0.0;
  std::array<ClassScores, kNumPolarities> per_class{};
  double macro_f1 = 0.0;
};

/// Throws Error when the lists differ in length or are empty.
MetricsReport evaluate(std::span<const Polarity> predicted, std::span<const Polarity> gold);

/// 3×3 table with gold rows and predicted columns.
std::string format_confusion(const ConfusionMatrix& m);
/// Human-readable block: accuracy, macro-F1, per-class P/R/F1, confusion.
std::string format_metrics(const MetricsReport& r);
/// `accuracy,macro_f1,{p,r,f1}_{positive,neutral,negative}` header and row.
std::string metrics_csv_header();
std::string metrics_csv_row(const MetricsReport& r);

}  // namespace sevote
