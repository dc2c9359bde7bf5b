#include "sevote/metrics.hpp"

#include <sstream>

#include "sevote/error.hpp"
#include "sevote/numeric_text.hpp"

namespace sevote {
namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

MetricsReport evaluate(std::span<const Polarity> predicted, std::span<const Polarity> gold) {
  if (predicted.size() != gold.size()) {
    throw Error("evaluate: " + std::to_string(predicted.size()) + " predictions for " +
                std::to_string(gold.size()) + " gold labels");
  }
  if (gold.empty()) throw Error("evaluate: empty label lists");

  MetricsReport r;
  r.total = gold.size();
  for (std::size_t i = 0; i < gold.size(); ++i) ++r.confusion[index_of(gold[i])][index_of(predicted[i])];

  std::size_t correct = 0;
  double f1_sum = 0.0;
  for (std::size_t c = 0; c < kNumPolarities; ++c) {
    const std::size_t tp = r.confusion[c][c];
    std::size_t gold_c = 0, pred_c = 0;
    for (std::size_t j = 0; j < kNumPolarities; ++j) {
      gold_c += r.confusion[c][j];
      pred_c += r.confusion[j][c];
    }
    auto& s = r.per_class[c];
    s.precision = ratio(tp, pred_c);
    s.recall = ratio(tp, gold_c);
    // 2PR/(P+R) == 2tp/(gold+pred); the count form is exact for the zero cases.
    s.f1 = ratio(2 * tp, gold_c + pred_c);
    correct += tp;
    f1_sum += s.f1;
  }
  r.accuracy = ratio(correct, r.total);
  r.macro_f1 = f1_sum / static_cast<double>(kNumPolarities);
  return r;
}

std::string format_confusion(const ConfusionMatrix& m) {
  std::ostringstream out;
  out << "gold\\pred   positive   neutral  negative\n";
  for (Polarity g : kPolarities) {
    std::string name(to_string(g));
    name.resize(10, ' ');
    out << name;
    for (Polarity p : kPolarities) {
      std::string cell = std::to_string(m[index_of(g)][index_of(p)]);
      out << std::string(cell.size() < 10 ? 10 - cell.size() : 1, ' ') << cell;
    }
    out << '\n';
  }
  return out.str();
}

std::string format_metrics(const MetricsReport& r) {
  std::ostringstream out;
  out << "documents  " << r.total << '\n'
      << "accuracy   " << format_fixed(r.accuracy, 4) << '\n'
      << "macro F1   " << format_fixed(r.macro_f1, 4) << '\n';
  for (Polarity p : kPolarities) {
    const auto& s = r.per_class[index_of(p)];
    std::string name(to_string(p));
    name.resize(10, ' ');
    out << name << " P " << format_fixed(s.precision, 4) << "  R " << format_fixed(s.recall, 4)
        << "  F1 " << format_fixed(s.f1, 4) << '\n';
  }
  out << format_confusion(r.confusion);
  return out.str();
}

std::string metrics_csv_header() {
  std::string h = "accuracy,macro_f1";
  for (Polarity p : kPolarities) {
    for (const char* m : {"precision", "recall", "f1"}) h += "," + std::string(m) + "_" + std::string(to_string(p));
  }
  return h;
}

std::string metrics_csv_row(const MetricsReport& r) {
  std::string row = format_double(r.accuracy) + "," + format_double(r.macro_f1);
  for (const auto& s : r.per_class) {
    row += "," + format_double(s.precision) + "," + format_double(s.recall) + "," + format_double(s.f1);
  }
  return row;
}

}  // namespace sevote
