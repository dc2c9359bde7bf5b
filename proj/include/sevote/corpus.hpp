#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sevote/error.hpp"
#include "sevote/polarity.hpp"

namespace sevote {

/// One labeled statement.
struct Document {
  std::string id;
  std::string text;
  Polarity label = Polarity::Neutral;

  friend bool operator==(const Document&, const Document&) = default;
};

/// Raw statement carrying an emotion name instead of a polarity.
struct EmotionDocument {
  std::string id;
  std::string text;
  std::string emotion;
};

/// Per-class document counts, indexed by index_of(Polarity).
struct ClassCounts {
  std::array<std::size_t, kNumPolarities> counts{};

  std::size_t total() const noexcept { return counts[0] + counts[1] + counts[2]; }
  std::size_t operator[](Polarity p) const noexcept { return counts[index_of(p)]; }
  std::size_t& operator[](Polarity p) noexcept { return counts[index_of(p)]; }

  friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

/// Named, validated dataset. Immutable once constructed: ids are unique,
/// texts are non-blank and the class counts always match the documents.
class Corpus {
 public:
  Corpus() = default;

  /// Throws CorpusError on duplicate ids or blank texts. `row` in the
  /// diagnostic is the 1-based position of the offending document.
  Corpus(std::string name, std::vector<Document> documents);

  const std::string& name() const noexcept { return name_; }
  const std::vector<Document>& documents() const noexcept { return documents_; }
  const ClassCounts& distribution() const noexcept { return distribution_; }
  std::size_t size() const noexcept { return documents_.size(); }
  bool empty() const noexcept { return documents_.empty(); }
  const Document& operator[](std::size_t i) const { return documents_[i]; }

  /// Returns a copy with a different name.
  Corpus renamed(std::string name) const { return Corpus(std::move(name), documents_, distribution_); }

  friend bool operator==(const Corpus&, const Corpus&) = default;

 private:
  Corpus(std::string name, std::vector<Document> documents, ClassCounts counts)
      : name_(std::move(name)), documents_(std::move(documents)), distribution_(counts) {}

  std::string name_;
  std::vector<Document> documents_;
  ClassCounts distribution_;
};

/// Ingestion and validation failure. `row()` is the 1-based CSV record
/// number (header = row 1) or 0 when the failure is not tied to a row.
class CorpusError : public Error {
 public:
  enum class Kind {
    MissingFile,
    BadHeader,
    MalformedRow,
    UnknownLabel,
    DuplicateId,
    EmptyText,
    UnmappedEmotion,
    BadMapping,
    DistributionMismatch,
  };

  CorpusError(Kind kind, std::size_t row, const std::string& message);

  Kind kind() const noexcept { return kind_; }
  std::size_t row() const noexcept { return row_; }

 private:
  Kind kind_;
  std::size_t row_;
};

/// Reads a corpus CSV (header `id,text,label`).
Corpus load_corpus(const std::filesystem::path& path, const std::string& name);
Corpus read_corpus(std::istream& in, const std::string& name);

/// Writes the canonical CSV dialect: header `id,text,label`, text always
/// quoted, id quoted only when needed, lowercase labels, LF line endings.
void write_corpus(std::ostream& out, const Corpus& corpus);
void save_corpus(const std::filesystem::path& path, const Corpus& corpus);

/// Reads an emotion-labeled CSV (header `id,text,emotion`).
std::vector<EmotionDocument> load_emotion_corpus(const std::filesystem::path& path);
std::vector<EmotionDocument> read_emotion_corpus(std::istream& in);

/// Emotion name to polarity table. Keys are stored lowercase and looked up
/// case-insensitively.
class EmotionMapping {
 public:
  EmotionMapping() = default;
  explicit EmotionMapping(std::map<std::string, Polarity> entries);

  /// joy, love → positive; anger, sadness, fear, disgust → negative;
  /// surprise, neutral → neutral.
  static EmotionMapping defaults();

  /// Parses `emotion=polarity` lines; `#` starts a comment.
  static EmotionMapping parse(std::istream& in);
  static EmotionMapping load(const std::filesystem::path& path);

  std::optional<Polarity> lookup(const std::string& emotion) const;
  const std::map<std::string, Polarity>& entries() const noexcept { return entries_; }

 private:
  std::map<std::string, Polarity> entries_;
};

/// Replaces each emotion by its mapped polarity. Throws
/// CorpusError{UnmappedEmotion} naming the first unmapped emotion.
Corpus map_emotions(const std::vector<EmotionDocument>& raw, const EmotionMapping& mapping,
                    const std::string& name);

/// Lowercases ASCII letters, collapses whitespace runs to one space and
/// trims. Key used for duplicate detection and overlap measurement.
std::string normalize_text(std::string_view text);

/// Collapses documents sharing normalized text into the first occurrence.
/// A group with conflicting labels takes its plurality label; groups whose
/// top label count is tied are dropped entirely.
Corpus deduplicate(const Corpus& corpus);

struct ClassShare {
  Polarity label;
  std::size_t count;
  double percent;  // exact, 0 for an empty corpus
};

struct DistributionReport {
  std::string name;
  std::size_t total = 0;
  std::array<ClassShare, kNumPolarities> classes{};

  /// "890 (19.7%)" style cell.
  std::string cell(Polarity p) const;
};

DistributionReport distribution_report(const Corpus& corpus);

/// Table-1-style text block: name, total, and one count (percent) per class.
std::string format_distribution(const DistributionReport& report);

/// Expected size and class split of a reference dataset.
struct ExpectedDistribution {
  std::size_t total = 0;
  ClassCounts counts;
};

/// Published sizes of the five software-engineering datasets, keyed by
/// canonical name (API, APP, GitHub, JIRA, StackOverflow).
std::optional<ExpectedDistribution> reference_distribution(const std::string& name);

/// Throws CorpusError{DistributionMismatch} listing every differing field.
void check_distribution(const Corpus& corpus, const ExpectedDistribution& expected);

}  // namespace sevote
