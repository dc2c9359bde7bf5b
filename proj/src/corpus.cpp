#include "sevote/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "sevote/csv.hpp"

namespace sevote {
namespace {

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw CorpusError(CorpusError::Kind::MissingFile, 0,
                      "cannot open corpus file '" + path.string() + "'");
  }
  return in;
}

std::vector<csv::Record> read_records(std::istream& in, const std::vector<std::string>& header) {
  std::vector<csv::Record> records;
  try {
    records = csv::read(in);
  } catch (const csv::ParseError& e) {
    throw CorpusError(CorpusError::Kind::MalformedRow, e.row(), e.what());
  }
  if (records.empty()) {
    throw CorpusError(CorpusError::Kind::BadHeader, 1, "missing header row");
  }
  std::vector<std::string> got;
  for (const auto& f : records.front().fields) got.push_back(lowercase(trim(f)));
  if (got != header) {
    std::string expected;
    for (const auto& h : header) expected += (expected.empty() ? "" : ",") + h;
    throw CorpusError(CorpusError::Kind::BadHeader, 1, "expected header '" + expected + "'");
  }
  for (const auto& rec : records) {
    if (rec.fields.size() != header.size()) {
      throw CorpusError(CorpusError::Kind::MalformedRow, rec.row,
                        "row " + std::to_string(rec.row) + ": expected " +
                            std::to_string(header.size()) + " columns, found " +
                            std::to_string(rec.fields.size()));
    }
  }
  records.erase(records.begin());
  return records;
}

ClassCounts count_labels(const std::vector<Document>& docs) {
  ClassCounts counts;
  for (const auto& d : docs) ++counts[d.label];
  return counts;
}

}  // namespace

CorpusError::CorpusError(Kind kind, std::size_t row, const std::string& message)
    : Error(message), kind_(kind), row_(row) {}

Corpus::Corpus(std::string name, std::vector<Document> documents)
    : name_(std::move(name)), documents_(std::move(documents)) {
  std::unordered_set<std::string> ids;
  for (std::size_t i = 0; i < documents_.size(); ++i) {
    const auto& d = documents_[i];
    if (!ids.insert(d.id).second) {
      throw CorpusError(CorpusError::Kind::DuplicateId, i + 1,
                        "document " + std::to_string(i + 1) + ": duplicate id '" + d.id + "'");
    }
    if (is_blank(d.text)) {
      throw CorpusError(CorpusError::Kind::EmptyText, i + 1,
                        "document " + std::to_string(i + 1) + ": empty text");
    }
  }
  distribution_ = count_labels(documents_);
}

Corpus read_corpus(std::istream& in, const std::string& name) {
  auto records = read_records(in, {"id", "text", "label"});
  std::vector<Document> docs;
  docs.reserve(records.size());
  std::unordered_set<std::string> ids;
  for (auto& rec : records) {
    const std::string where = "row " + std::to_string(rec.row) + ": ";
    auto label = parse_polarity(rec.fields[2]);
    if (!label) {
      throw CorpusError(CorpusError::Kind::UnknownLabel, rec.row,
                        where + "unknown label '" + rec.fields[2] + "'");
    }
    if (!ids.insert(rec.fields[0]).second) {
      throw CorpusError(CorpusError::Kind::DuplicateId, rec.row,
                        where + "duplicate id '" + rec.fields[0] + "'");
    }
    if (is_blank(rec.fields[1])) {
      throw CorpusError(CorpusError::Kind::EmptyText, rec.row, where + "empty text");
    }
    docs.push_back(Document{std::move(rec.fields[0]), std::move(rec.fields[1]), *label});
  }
  return Corpus(name, std::move(docs));
}

Corpus load_corpus(const std::filesystem::path& path, const std::string& name) {
  auto in = open_or_throw(path);
  return read_corpus(in, name);
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
  out << "id,text,label\n";
  for (const auto& d : corpus.documents()) {
    csv::write_field(out, d.id);
    out << ',';
    csv::write_field(out, d.text, true);
    out << ',' << to_string(d.label) << '\n';
  }
}

void save_corpus(const std::filesystem::path& path, const Corpus& corpus) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write corpus file '" + path.string() + "'");
  write_corpus(out, corpus);
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

std::vector<EmotionDocument> read_emotion_corpus(std::istream& in) {
  auto records = read_records(in, {"id", "text", "emotion"});
  std::vector<EmotionDocument> docs;
  docs.reserve(records.size());
  std::unordered_set<std::string> ids;
  for (auto& rec : records) {
    const std::string where = "row " + std::to_string(rec.row) + ": ";
    if (!ids.insert(rec.fields[0]).second) {
      throw CorpusError(CorpusError::Kind::DuplicateId, rec.row,
                        where + "duplicate id '" + rec.fields[0] + "'");
    }
    if (is_blank(rec.fields[1])) {
      throw CorpusError(CorpusError::Kind::EmptyText, rec.row, where + "empty text");
    }
    docs.push_back({std::move(rec.fields[0]), std::move(rec.fields[1]), trim(rec.fields[2])});
  }
  return docs;
}

std::vector<EmotionDocument> load_emotion_corpus(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return read_emotion_corpus(in);
}

EmotionMapping::EmotionMapping(std::map<std::string, Polarity> entries) {
  for (auto& [emotion, polarity] : entries) entries_[lowercase(trim(emotion))] = polarity;
}

EmotionMapping EmotionMapping::defaults() {
  return EmotionMapping({
      {"joy", Polarity::Positive},
      {"love", Polarity::Positive},
      {"anger", Polarity::Negative},
      {"sadness", Polarity::Negative},
      {"fear", Polarity::Negative},
      {"disgust", Polarity::Negative},
      {"surprise", Polarity::Neutral},
      {"neutral", Polarity::Neutral},
  });
}

EmotionMapping EmotionMapping::parse(std::istream& in) {
  std::map<std::string, Polarity> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (is_blank(line)) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw CorpusError(CorpusError::Kind::BadMapping, lineno,
                        "mapping line " + std::to_string(lineno) + ": expected emotion=polarity");
    }
    std::string emotion = lowercase(trim(std::string_view(line).substr(0, eq)));
    auto polarity = parse_polarity(std::string_view(line).substr(eq + 1));
    if (emotion.empty() || !polarity) {
      throw CorpusError(CorpusError::Kind::BadMapping, lineno,
                        "mapping line " + std::to_string(lineno) + ": invalid entry '" + line + "'");
    }
    entries[emotion] = *polarity;
  }
  return EmotionMapping(std::move(entries));
}

EmotionMapping EmotionMapping::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw CorpusError(CorpusError::Kind::MissingFile, 0,
                      "cannot open mapping file '" + path.string() + "'");
  }
  return parse(in);
}

std::optional<Polarity> EmotionMapping::lookup(const std::string& emotion) const {
  auto it = entries_.find(lowercase(trim(emotion)));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

Corpus map_emotions(const std::vector<EmotionDocument>& raw, const EmotionMapping& mapping,
                    const std::string& name) {
  std::vector<Document> docs;
  docs.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto polarity = mapping.lookup(raw[i].emotion);
    if (!polarity) {
      throw CorpusError(CorpusError::Kind::UnmappedEmotion, i + 2,
                        "row " + std::to_string(i + 2) + ": unmapped emotion '" + raw[i].emotion + "'");
    }
    docs.push_back({raw[i].id, raw[i].text, *polarity});
  }
  return Corpus(name, std::move(docs));
}

std::string normalize_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (unsigned char c : text) {
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

Corpus deduplicate(const Corpus& corpus) {
  struct Group {
    std::size_t first;
    ClassCounts votes;
  };
  std::unordered_map<std::string, std::size_t> group_of;
  std::vector<Group> groups;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    auto [it, inserted] = group_of.try_emplace(normalize_text(corpus[i].text), groups.size());
    if (inserted) groups.push_back({i, {}});
    ++groups[it->second].votes[corpus[i].label];
  }

  std::vector<Document> kept;
  kept.reserve(groups.size());
  for (const auto& g : groups) {
    const auto& c = g.votes.counts;
    std::size_t top = *std::max_element(c.begin(), c.end());
    if (std::count(c.begin(), c.end(), top) > 1) continue;  // label tie: drop group
    Document d = corpus[g.first];
    d.label = polarity_at(static_cast<std::size_t>(std::find(c.begin(), c.end(), top) - c.begin()));
    kept.push_back(std::move(d));
  }
  return Corpus(corpus.name(), std::move(kept));
}

std::string DistributionReport::cell(Polarity p) const {
  const auto& share = classes[index_of(p)];
  char buf[64];
  std::snprintf(buf, sizeof buf, "%zu (%.1f%%)", share.count, share.percent);
  return buf;
}

DistributionReport distribution_report(const Corpus& corpus) {
  DistributionReport r;
  r.name = corpus.name();
  r.total = corpus.size();
  for (Polarity p : kPolarities) {
    std::size_t n = corpus.distribution()[p];
    double pct = r.total == 0 ? 0.0 : 100.0 * static_cast<double>(n) / static_cast<double>(r.total);
    r.classes[index_of(p)] = {p, n, pct};
  }
  return r;
}

std::string format_distribution(const DistributionReport& report) {
  std::ostringstream out;
  out << "Data set   " << report.name << '\n'
      << "#Docs      " << report.total << '\n'
      << "#Positive  " << report.cell(Polarity::Positive) << '\n'
      << "#Neutral   " << report.cell(Polarity::Neutral) << '\n'
      << "#Negative  " << report.cell(Polarity::Negative) << '\n';
  return out.str();
}

std::optional<ExpectedDistribution> reference_distribution(const std::string& name) {
  struct Row {
    const char* name;
    std::size_t total, positive, neutral, negative;
  };
  static constexpr Row kRows[] = {
      {"API", 4522, 890, 3136, 496},
      {"APP", 341, 186, 25, 130},
      {"GitHub", 7122, 2013, 3022, 2087},
      {"JIRA", 3974, 290, 3058, 626},
      {"StackOverflow", 4423, 1527, 1694, 1202},
  };
  for (const auto& row : kRows) {
    if (lowercase(name) == lowercase(row.name)) {
      ExpectedDistribution e;
      e.total = row.total;
      e.counts.counts = {row.positive, row.neutral, row.negative};
      return e;
    }
  }
  return std::nullopt;
}

void check_distribution(const Corpus& corpus, const ExpectedDistribution& expected) {
  std::string problems;
  auto note = [&](const std::string& field, std::size_t want, std::size_t got) {
    if (want == got) return;
    problems += (problems.empty() ? "" : "; ") + field + " expected " + std::to_string(want) +
                ", found " + std::to_string(got);
  };
  note("#Docs", expected.total, corpus.size());
  for (Polarity p : kPolarities) {
    note("#" + std::string(to_string(p)), expected.counts[p], corpus.distribution()[p]);
  }
  if (!problems.empty()) {
    throw CorpusError(CorpusError::Kind::DistributionMismatch, 0,
                      "corpus '" + corpus.name() + "' does not match its reference distribution: " +
                          problems);
  }
}

}  // namespace sevote
