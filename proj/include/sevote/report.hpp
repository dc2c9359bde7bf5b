#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sevote/agreement.hpp"
#include "sevote/classifier.hpp"
#include "sevote/experiment_config.hpp"

namespace sevote {

struct MemberResult {
  ClassifierSpec spec;
  std::string train_tag;  // report label of spec.training_corpus
  double accuracy = 0.0;
  double macro_f1 = 0.0;

  friend bool operator==(const MemberResult&, const MemberResult&) = default;
};

/// One report row. Within-domain runs produce one row per fold ("1".."k")
/// and a "mean" row; cross-platform runs produce a single "all" row.
struct ExperimentResult {
  std::string run_id;
  std::string experiment;
  std::string grid_id;
  ExperimentMode mode = ExperimentMode::WithinDomain;
  std::string fold = "all";
  std::string test_corpus;
  std::string test_tag;
  std::size_t n_test = 0;
  double vc_accuracy = 0.0;
  double vc_macro_f1 = 0.0;
  std::vector<MemberResult> members;
  double disagreement_rate = 0.0;
  double kappa = 0.0;
  AgreementBand band = AgreementBand::Slight;
  /// Share of test documents whose normalized text occurs in a member's
  /// training corpus. Cross-platform rows only.
  std::optional<double> overlap;
  std::uint64_t seed = 0;

  bool is_mean() const noexcept { return fold == "mean"; }

  friend bool operator==(const ExperimentResult&, const ExperimentResult&) = default;
};

enum class ReportFormat { Csv, Markdown };

/// Accepts "csv", "md" and "markdown"; throws ConfigError otherwise.
ReportFormat parse_report_format(std::string_view text);

/// Full-precision CSV, one line per result. parse_results_csv inverts it
/// exactly.
void write_results_csv(std::ostream& out, std::span<const ExperimentResult> results);
std::vector<ExperimentResult> parse_results_csv(std::istream& in);
std::vector<ExperimentResult> load_results_csv(const std::filesystem::path& path);

/// Markdown tables, one section per experiment in order of first
/// appearance. Accuracies use two decimals, disagreement one-decimal
/// percent, kappa two decimals. In every row the VC and member accuracies
/// equal to the row maximum at display precision are bold. Within-domain
/// sections show the mean rows first and the per-fold rows below.
void write_results_markdown(std::ostream& out, std::span<const ExperimentResult> results);

/// Renders `results` in `format`; throws Error on an empty result list.
std::string emit_report(std::span<const ExperimentResult> results, ReportFormat format);

/// Indices (0 = VC, i = member i) of the accuracies that are bold in the
/// Markdown row.
std::vector<std::size_t> bold_columns(const ExperimentResult& result);

}  // namespace sevote
