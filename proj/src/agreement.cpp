#include "sevote/agreement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sevote/error.hpp"
#include "sevote/numeric_text.hpp"

namespace sevote {

RatingMatrix::RatingMatrix(std::vector<Row> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw Error("rating matrix has no subjects");
  raters_ = rows_.front()[0] + rows_.front()[1] + rows_.front()[2];
  if (raters_ < 2) throw Error("rating matrix needs at least two raters per subject");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto& r = rows_[i];
    if (r[0] + r[1] + r[2] != raters_) {
      throw Error("rating matrix row " + std::to_string(i) + " sums to " +
                  std::to_string(r[0] + r[1] + r[2]) + ", expected " + std::to_string(raters_));
    }
  }
}

std::string_view to_string(AgreementBand band) noexcept {
  switch (band) {
    case AgreementBand::Poor: return "poor";
    case AgreementBand::Slight: return "slight";
    case AgreementBand::Fair: return "fair";
    case AgreementBand::Moderate: return "moderate";
    case AgreementBand::Substantial: return "substantial";
    case AgreementBand::AlmostPerfect: return "almost perfect";
  }
  return "slight";
}

AgreementBand landis_koch_band(double kappa) {
  if (std::isnan(kappa) || kappa < -1.0 || kappa > 1.0) {
    throw Error("kappa " + format_double(kappa) + " outside [-1, 1]");
  }
  if (kappa < 0.0) return AgreementBand::Poor;
  if (kappa <= 0.20) return AgreementBand::Slight;
  if (kappa <= 0.40) return AgreementBand::Fair;
  if (kappa <= 0.60) return AgreementBand::Moderate;
  if (kappa <= 0.80) return AgreementBand::Substantial;
  return AgreementBand::AlmostPerfect;
}

AgreementReport fleiss_kappa(const RatingMatrix& matrix) {
  const std::size_t big_n = matrix.subjects();
  if (big_n < 2) throw Error("Fleiss' kappa needs at least two subjects");
  const double n = static_cast<double>(matrix.raters());

  double p_bar = 0.0;
  std::array<double, kNumPolarities> column{};
  for (const auto& row : matrix.rows()) {
    double sq = 0.0;
    for (std::size_t j = 0; j < kNumPolarities; ++j) {
      const double x = static_cast<double>(row[j]);
      sq += x * x;
      column[j] += x;
    }
    p_bar += (sq - n) / (n * (n - 1.0));
  }
  p_bar /= static_cast<double>(big_n);

  double p_e = 0.0;
  for (double c : column) {
    const double pj = c / (static_cast<double>(big_n) * n);
    p_e += pj * pj;
  }

  AgreementReport r;
  r.observed = p_bar;
  r.expected = p_e;
  // P̄e == 1 only when one column holds every rating, which forces P̄ == 1.
  if (p_e >= 1.0) {
    r.kappa = 1.0;
    r.degenerate = true;
  } else {
    r.kappa = (p_bar - p_e) / (1.0 - p_e);
  }
  r.band = landis_koch_band(std::clamp(r.kappa, -1.0, 1.0));
  return r;
}

RatingMatrix ratings_from_votes(std::span<const EnsemblePrediction> predictions) {
  std::vector<RatingMatrix::Row> rows;
  rows.reserve(predictions.size());
  const std::size_t n = predictions.empty() ? 0 : predictions.front().votes.size();
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (predictions[i].votes.size() != n) {
      throw Error("prediction " + std::to_string(i) + " has " +
                  std::to_string(predictions[i].votes.size()) + " member votes, expected " +
                  std::to_string(n));
    }
    RatingMatrix::Row row{};
    for (Polarity p : predictions[i].votes) ++row[index_of(p)];
    rows.push_back(row);
  }
  return RatingMatrix(std::move(rows));
}

std::string format_agreement(const AgreementReport& r) {
  std::ostringstream out;
  out << "Fleiss' kappa  " << format_fixed(r.kappa, 4) << " (" << to_string(r.band) << ")\n"
      << "observed P     " << format_fixed(r.observed, 4) << '\n'
      << "expected Pe    " << format_fixed(r.expected, 4) << '\n';
  if (r.degenerate) out << "warning: all ratings fall in one category; kappa set to 1\n";
  return out.str();
}

std::string agreement_csv_header() { return "kappa,band,observed,expected,degenerate"; }

std::string agreement_csv_row(const AgreementReport& r) {
  return format_double(r.kappa) + "," + std::string(to_string(r.band)) + "," +
         format_double(r.observed) + "," + format_double(r.expected) + "," +
         (r.degenerate ? "true" : "false");
}

}  // namespace sevote
