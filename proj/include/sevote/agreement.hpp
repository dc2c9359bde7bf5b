#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sevote/ensemble.hpp"
#include "sevote/polarity.hpp"

namespace sevote {

/// N subjects × 3 categories; every row sums to the same rater count n.
class RatingMatrix {
 public:
  using Row = std::array<std::size_t, kNumPolarities>;

  /// Throws Error when rows are missing, n < 2, or a row sum differs.
  explicit RatingMatrix(std::vector<Row> rows);

  std::size_t subjects() const noexcept { return rows_.size(); }
  std::size_t raters() const noexcept { return raters_; }
  const std::vector<Row>& rows() const noexcept { return rows_; }

 private:
  std::vector<Row> rows_;
  std::size_t raters_ = 0;
};

/// Landis–Koch interpretation of kappa.
enum class AgreementBand { Poor, Slight, Fair, Moderate, Substantial, AlmostPerfect };

std::string_view to_string(AgreementBand band) noexcept;

/// < 0 Poor; [0, .20] Slight; (.20, .40] Fair; (.40, .60] Moderate;
/// (.60, .80] Substantial; (.80, 1] AlmostPerfect. Throws Error outside
/// [-1, 1] or for NaN.
AgreementBand landis_koch_band(double kappa);

struct AgreementReport {
  double kappa = 0.0;
  AgreementBand band = AgreementBand::Slight;
  double observed = 0.0;  // mean per-subject agreement P̄
  double expected = 0.0;  // chance agreement P̄e
  /// Set when every rating falls in one category (P̄e = 1); kappa is then
  /// reported as 1.0 instead of 0/0.
  bool degenerate = false;
};

/// Fleiss' kappa. Throws Error for fewer than two subjects.
AgreementReport fleiss_kappa(const RatingMatrix& matrix);

/// Row i counts the member votes for each polarity on document i. Throws
/// Error when prediction member counts differ.
RatingMatrix ratings_from_votes(std::span<const EnsemblePrediction> predictions);

std::string format_agreement(const AgreementReport& r);
std::string agreement_csv_header();
std::string agreement_csv_row(const AgreementReport& r);

}  // namespace sevote
