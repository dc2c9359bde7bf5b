#include "sevote/report.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "sevote/csv.hpp"
#include "sevote/numeric_text.hpp"

namespace sevote {
namespace {

const std::vector<std::string> kFixedColumns = {
    "run_id", "experiment", "grid_id", "mode", "fold", "test_corpus", "test_tag", "n_test",
    "vc_accuracy", "vc_macro_f1", "disagreement_rate", "kappa", "band", "overlap", "seed"};
const std::vector<std::string> kMemberColumns = {"family", "params", "train", "train_tag",
                                                 "accuracy", "macro_f1"};

std::string encode_params(const Hyperparameters& p) {
  return "alpha=" + format_double(p.alpha) + ";epochs=" + std::to_string(p.epochs) +
         ";learning_rate=" + format_double(p.learning_rate) + ";l2=" + format_double(p.l2) +
         ";min_df=" + std::to_string(p.min_df);
}

template <typename T>
T parse_integer(const std::string& s, const std::string& what) {
  T v{};
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size()) throw Error("results: bad " + what + " '" + s + "'");
  return v;
}

double parse_number(const std::string& s, const std::string& what) {
  auto v = parse_double(s);
  if (!v) throw Error("results: bad " + what + " '" + s + "'");
  return *v;
}

Hyperparameters decode_params(const std::string& text) {
  Hyperparameters p;
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Error("results: bad params '" + text + "'");
    std::string key = item.substr(0, eq), value = item.substr(eq + 1);
    if (key == "alpha") p.alpha = parse_number(value, key);
    else if (key == "epochs") p.epochs = parse_integer<int>(value, key);
    else if (key == "learning_rate") p.learning_rate = parse_number(value, key);
    else if (key == "l2") p.l2 = parse_number(value, key);
    else if (key == "min_df") p.min_df = parse_integer<std::size_t>(value, key);
    else throw Error("results: unknown parameter '" + key + "'");
  }
  return p;
}

AgreementBand parse_band(const std::string& s) {
  for (auto b : {AgreementBand::Poor, AgreementBand::Slight, AgreementBand::Fair, AgreementBand::Moderate,
                 AgreementBand::Substantial, AgreementBand::AlmostPerfect}) {
    if (to_string(b) == s) return b;
  }
  throw Error("results: unknown agreement band '" + s + "'");
}

std::string family_title(Family f) {
  switch (f) {
    case Family::Lexicon: return "Lexicon";
    case Family::NaiveBayes: return "NaiveBayes";
    case Family::Logistic: return "Logistic";
  }
  return "Member";
}

double displayed(double accuracy) { return std::stod(format_fixed(accuracy, 2)); }

struct Section {
  std::string experiment;
  ExperimentMode mode;
  std::vector<const ExperimentResult*> rows;
};

// Column headers for the member slots of one section, and whether cells
// need the family spelled out.
std::pair<std::vector<std::string>, bool> member_headers(const Section& s) {
  std::size_t slots = 0;
  for (const auto* r : s.rows) slots = std::max(slots, r->members.size());
  std::vector<std::optional<Family>> family(slots);
  bool mixed = false;
  for (std::size_t m = 0; m < slots; ++m) {
    for (const auto* r : s.rows) {
      if (m >= r->members.size()) continue;
      if (!family[m]) family[m] = r->members[m].spec.family;
      else if (*family[m] != r->members[m].spec.family) mixed = true;
    }
  }
  std::vector<std::string> headers;
  if (mixed) {
    for (std::size_t m = 0; m < slots; ++m) headers.push_back("Member" + std::to_string(m + 1));
    return {headers, true};
  }
  std::map<Family, int> total, seen;
  for (const auto& f : family) ++total[*f];
  for (const auto& f : family) {
    std::string h = family_title(*f);
    if (total[*f] > 1) h += std::to_string(++seen[*f]);
    headers.push_back(h);
  }
  return {headers, false};
}

std::string accuracy_cell(double accuracy, bool bold) {
  std::string v = format_fixed(accuracy, 2);
  return bold ? "**" + v + "**" : v;
}

void write_table(std::ostream& out, const Section& s, const std::vector<const ExperimentResult*>& rows,
                 bool fold_column) {
  auto [headers, mixed] = member_headers(s);
  const bool cross = s.mode == ExperimentMode::CrossPlatform;

  out << "| ID |";
  if (fold_column) out << " Fold |";
  if (cross) out << " Testset |";
  out << " #Data | VC |";
  for (const auto& h : headers) out << ' ' << h << " |";
  out << " Disagreement | κ |\n|---|";
  if (fold_column) out << "---|";
  if (cross) out << "---|";
  out << "---|---|";
  for (std::size_t i = 0; i < headers.size(); ++i) out << "---|";
  out << "---|---|\n";

  for (const auto* r : rows) {
    auto bold = bold_columns(*r);
    auto is_bold = [&bold](std::size_t c) { return std::find(bold.begin(), bold.end(), c) != bold.end(); };
    out << "| " << r->run_id;
    if (!cross) out << " (" << r->test_tag << ")";
    out << " |";
    if (fold_column) out << ' ' << r->fold << " |";
    if (cross) out << ' ' << r->test_tag << " |";
    out << ' ' << r->n_test << " | " << accuracy_cell(r->vc_accuracy, is_bold(0)) << " |";
    for (std::size_t m = 0; m < headers.size(); ++m) {
      if (m >= r->members.size()) {
        out << "  |";
        continue;
      }
      const auto& mr = r->members[m];
      out << ' ' << accuracy_cell(mr.accuracy, is_bold(m + 1));
      if (cross && mixed) out << " (" << mr.train_tag << ", " << to_string(mr.spec.family) << ")";
      else if (cross) out << " (" << mr.train_tag << ")";
      else if (mixed) out << " (" << to_string(mr.spec.family) << ")";
      out << " |";
    }
    out << ' ' << format_percent(r->disagreement_rate) << " | " << format_fixed(r->kappa, 2) << " |\n";
  }
}

}  // namespace

ReportFormat parse_report_format(std::string_view text) {
  std::string name(text);
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (name == "csv") return ReportFormat::Csv;
  if (name == "md" || name == "markdown") return ReportFormat::Markdown;
  throw ConfigError("unknown report format '" + std::string(text) + "' (expected csv or md)");
}

void write_results_csv(std::ostream& out, std::span<const ExperimentResult> results) {
  std::size_t members = 0;
  for (const auto& r : results) members = std::max(members, r.members.size());
  std::vector<std::string> header = kFixedColumns;
  for (std::size_t m = 1; m <= members; ++m) {
    for (const auto& c : kMemberColumns) header.push_back("member" + std::to_string(m) + "_" + c);
  }
  csv::write_record(out, header);

  for (const auto& r : results) {
    std::vector<std::string> row = {
        r.run_id, r.experiment, r.grid_id, std::string(to_string(r.mode)), r.fold, r.test_corpus,
        r.test_tag, std::to_string(r.n_test), format_double(r.vc_accuracy), format_double(r.vc_macro_f1),
        format_double(r.disagreement_rate), format_double(r.kappa), std::string(to_string(r.band)),
        r.overlap ? format_double(*r.overlap) : std::string(), std::to_string(r.seed)};
    for (std::size_t m = 0; m < members; ++m) {
      if (m < r.members.size()) {
        const auto& mr = r.members[m];
        row.insert(row.end(), {std::string(to_string(mr.spec.family)), encode_params(mr.spec.params),
                               mr.spec.training_corpus, mr.train_tag, format_double(mr.accuracy),
                               format_double(mr.macro_f1)});
      } else {
        row.insert(row.end(), kMemberColumns.size(), std::string());
      }
    }
    csv::write_record(out, row);
  }
}

std::vector<ExperimentResult> parse_results_csv(std::istream& in) {
  auto records = csv::read(in);
  if (records.empty()) throw Error("results: missing header");
  const auto& header = records.front().fields;
  if (header.size() < kFixedColumns.size() ||
      !std::equal(kFixedColumns.begin(), kFixedColumns.end(), header.begin()) ||
      (header.size() - kFixedColumns.size()) % kMemberColumns.size() != 0) {
    throw Error("results: unexpected header");
  }
  const std::size_t members = (header.size() - kFixedColumns.size()) / kMemberColumns.size();

  std::vector<ExperimentResult> results;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& f = records[i].fields;
    if (f.size() != header.size()) {
      throw Error("results: row " + std::to_string(records[i].row) + " has " + std::to_string(f.size()) +
                  " columns, expected " + std::to_string(header.size()));
    }
    ExperimentResult r;
    r.run_id = f[0];
    r.experiment = f[1];
    r.grid_id = f[2];
    auto mode = parse_mode(f[3]);
    if (!mode) throw Error("results: bad mode '" + f[3] + "'");
    r.mode = *mode;
    r.fold = f[4];
    r.test_corpus = f[5];
    r.test_tag = f[6];
    r.n_test = parse_integer<std::size_t>(f[7], "n_test");
    r.vc_accuracy = parse_number(f[8], "vc_accuracy");
    r.vc_macro_f1 = parse_number(f[9], "vc_macro_f1");
    r.disagreement_rate = parse_number(f[10], "disagreement_rate");
    r.kappa = parse_number(f[11], "kappa");
    r.band = parse_band(f[12]);
    if (!f[13].empty()) r.overlap = parse_number(f[13], "overlap");
    r.seed = parse_integer<std::uint64_t>(f[14], "seed");
    for (std::size_t m = 0; m < members; ++m) {
      const std::size_t base = kFixedColumns.size() + m * kMemberColumns.size();
      if (f[base].empty()) continue;
      MemberResult mr;
      auto family = parse_family(f[base]);
      if (!family) throw Error("results: bad family '" + f[base] + "'");
      mr.spec.family = *family;
      mr.spec.params = decode_params(f[base + 1]);
      mr.spec.training_corpus = f[base + 2];
      mr.train_tag = f[base + 3];
      mr.accuracy = parse_number(f[base + 4], "accuracy");
      mr.macro_f1 = parse_number(f[base + 5], "macro_f1");
      r.members.push_back(std::move(mr));
    }
    results.push_back(std::move(r));
  }
  return results;
}

std::vector<ExperimentResult> load_results_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open results file '" + path.string() + "'");
  return parse_results_csv(in);
}

std::vector<std::size_t> bold_columns(const ExperimentResult& result) {
  double best = displayed(result.vc_accuracy);
  for (const auto& m : result.members) best = std::max(best, displayed(m.accuracy));
  std::vector<std::size_t> cols;
  if (displayed(result.vc_accuracy) == best) cols.push_back(0);
  for (std::size_t m = 0; m < result.members.size(); ++m) {
    if (displayed(result.members[m].accuracy) == best) cols.push_back(m + 1);
  }
  return cols;
}

void write_results_markdown(std::ostream& out, std::span<const ExperimentResult> results) {
  std::vector<Section> sections;
  for (const auto& r : results) {
    auto it = std::find_if(sections.begin(), sections.end(),
                           [&r](const Section& s) { return s.experiment == r.experiment; });
    if (it == sections.end()) {
      sections.push_back({r.experiment, r.mode, {}});
      it = sections.end() - 1;
    }
    it->rows.push_back(&r);
  }

  bool first = true;
  for (const auto& s : sections) {
    if (!first) out << '\n';
    first = false;
    out << "## " << s.experiment << " (" << (s.mode == ExperimentMode::WithinDomain ? "within-domain" : "cross-platform")
        << ")\n\n";
    if (s.mode == ExperimentMode::CrossPlatform) {
      write_table(out, s, s.rows, false);
      continue;
    }
    std::vector<const ExperimentResult*> means, folds;
    for (const auto* r : s.rows) (r->is_mean() ? means : folds).push_back(r);
    if (!means.empty()) {
      out << "Mean over folds.\n\n";
      write_table(out, s, means, false);
    }
    if (!folds.empty()) {
      out << "\nPer fold.\n\n";
      write_table(out, s, folds, true);
    }
  }
}

std::string emit_report(std::span<const ExperimentResult> results, ReportFormat format) {
  if (results.empty()) throw Error("cannot emit a report without results");
  std::ostringstream out;
  if (format == ReportFormat::Csv) write_results_csv(out, results);
  else write_results_markdown(out, results);
  return out.str();
}

}  // namespace sevote
