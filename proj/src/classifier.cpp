#include "sevote/classifier.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "sevote/numeric_text.hpp"

namespace sevote {

std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::Lexicon: return "lexicon";
    case Family::NaiveBayes: return "naive_bayes";
    case Family::Logistic: return "logistic";
  }
  return "lexicon";
}

std::optional<Family> parse_family(std::string_view text) noexcept {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "lexicon") return Family::Lexicon;
  if (s == "naive_bayes" || s == "naivebayes" || s == "nb") return Family::NaiveBayes;
  if (s == "logistic" || s == "lr") return Family::Logistic;
  return std::nullopt;
}

void ClassifierSpec::validate() const {
  if (family != Family::Lexicon && (training_corpus.empty() || training_corpus == "none")) {
    throw ConfigError(std::string(to_string(family)) + " member needs a training corpus");
  }
  if (training_corpus.empty()) throw ConfigError("empty training corpus name");
  if (!(params.alpha > 0.0)) throw ConfigError("alpha must be positive");
  if (params.epochs < 0) throw ConfigError("epochs must be non-negative");
  if (!(params.learning_rate > 0.0)) throw ConfigError("learning_rate must be positive");
  if (params.l2 < 0.0) throw ConfigError("l2 must be non-negative");
  if (params.min_df < 1) throw ConfigError("min_df must be at least 1");
}

ClassifierModel::ClassifierModel(ClassifierSpec spec, State state)
    : spec_(std::move(spec)), state_(std::move(state)) {
  if (state_.index() != static_cast<std::size_t>(spec_.family)) {
    throw Error("classifier state does not match its family");
  }
}

Polarity ClassifierModel::predict(std::string_view text) const {
  return std::visit([text](const auto& m) { return m.predict(text); }, state_);
}

std::vector<Polarity> ClassifierModel::predict_batch(std::span<const Document> docs) const {
  std::vector<Polarity> out;
  out.reserve(docs.size());
  for (const auto& d : docs) out.push_back(predict(d));
  return out;
}

ClassifierModel train(const ClassifierSpec& spec, std::span<const Document> train_docs,
                      std::uint64_t seed) {
  spec.validate();
  switch (spec.family) {
    case Family::Lexicon:
      return ClassifierModel(spec, LexiconModel());
    case Family::NaiveBayes:
      return ClassifierModel(spec, NaiveBayesModel::train(train_docs, spec.params.alpha,
                                                          spec.params.min_df));
    case Family::Logistic: {
      LogisticOptions opts;
      opts.epochs = spec.params.epochs;
      opts.learning_rate = spec.params.learning_rate;
      opts.l2 = spec.params.l2;
      opts.min_df = spec.params.min_df;
      return ClassifierModel(spec, fit_logistic(train_docs, opts, seed).model);
    }
  }
  throw Error("unknown classifier family");
}

// ---------------------------------------------------------------------------
// Persistence

namespace {

constexpr std::string_view kMagic = "sevote-model 1";

void write_row(std::ostream& out, const double* values, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out << ' ';
    out << format_double(values[i]);
  }
  out << '\n';
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::string line() {
    std::string s;
    if (!std::getline(in_, s)) fail("unexpected end of model file");
    ++lineno_;
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
  }

  /// Reads `key value` and returns value.
  std::string field(std::string_view key) {
    std::string s = line();
    if (s.size() < key.size() + 1 || s.compare(0, key.size(), key) != 0 || s[key.size()] != ' ') {
      fail("expected '" + std::string(key) + "'");
    }
    return s.substr(key.size() + 1);
  }

  double number(std::string_view key) { return to_double(field(key)); }

  std::size_t count(std::string_view key) {
    std::string v = field(key);
    std::size_t n = 0;
    auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
    if (ec != std::errc{} || end != v.data() + v.size()) fail("bad count for '" + std::string(key) + "'");
    return n;
  }

  std::vector<double> row(std::size_t n) {
    std::istringstream ss(line());
    std::vector<double> values;
    values.reserve(n);
    std::string tok;
    while (ss >> tok) values.push_back(to_double(tok));
    if (values.size() != n) fail("expected " + std::to_string(n) + " values");
    return values;
  }

  double to_double(const std::string& s) {
    auto v = parse_double(s);
    if (!v) fail("bad number '" + s + "'");
    return *v;
  }

  std::istream& stream() { return in_; }
  void skip(std::size_t n) { lineno_ += n; }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error("model file line " + std::to_string(lineno_) + ": " + what);
  }

 private:
  std::istream& in_;
  std::size_t lineno_ = 0;
};

}  // namespace

void write_model(std::ostream& out, const ClassifierModel& model) {
  const auto& spec = model.spec();
  out << kMagic << '\n'
      << "family " << to_string(spec.family) << '\n'
      << "training_corpus " << spec.training_corpus << '\n'
      << "alpha " << format_double(spec.params.alpha) << '\n'
      << "epochs " << spec.params.epochs << '\n'
      << "learning_rate " << format_double(spec.params.learning_rate) << '\n'
      << "l2 " << format_double(spec.params.l2) << '\n'
      << "min_df " << spec.params.min_df << '\n';

  std::visit(
      [&out](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, LexiconModel>) {
          std::vector<std::pair<std::string, int>> entries(m.valence().begin(), m.valence().end());
          std::sort(entries.begin(), entries.end());
          out << "negation_window " << m.negation_window() << '\n';
          out << "lexicon " << entries.size() << '\n';
          for (const auto& [word, v] : entries) out << word << '\t' << v << '\n';
        } else {
          const auto& vocab = m.vocabulary();
          out << "vocabulary " << vocab.size() << '\n';
          vocab.write(out);
          if constexpr (std::is_same_v<T, NaiveBayesModel>) {
            out << "log_prior ";
            write_row(out, m.log_prior().data(), kNumPolarities);
            out << "log_likelihood " << kNumPolarities << ' ' << vocab.size() << '\n';
            for (std::size_t c = 0; c < kNumPolarities; ++c) {
              write_row(out, m.log_likelihoods().data() + c * vocab.size(), vocab.size());
            }
          } else {
            out << "bias ";
            write_row(out, m.bias().data(), kNumPolarities);
            out << "weights " << kNumPolarities << ' ' << vocab.size() << '\n';
            for (std::size_t c = 0; c < kNumPolarities; ++c) {
              write_row(out, m.weights().data() + c * vocab.size(), vocab.size());
            }
          }
        }
      },
      model.state());
  out << "end\n";
}

ClassifierModel read_model(std::istream& in) {
  Reader r(in);
  if (r.line() != kMagic) r.fail("not a sevote model file");
  ClassifierSpec spec;
  auto family = parse_family(r.field("family"));
  if (!family) r.fail("unknown family");
  spec.family = *family;
  spec.training_corpus = r.field("training_corpus");
  spec.params.alpha = r.number("alpha");
  spec.params.epochs = static_cast<int>(r.count("epochs"));
  spec.params.learning_rate = r.number("learning_rate");
  spec.params.l2 = r.number("l2");
  spec.params.min_df = r.count("min_df");

  auto read_matrix = [&r](std::string_view key, std::size_t v) {
    std::string dims = r.field(key);
    if (dims != std::to_string(kNumPolarities) + " " + std::to_string(v)) r.fail("bad matrix shape");
    std::vector<double> m;
    m.reserve(kNumPolarities * v);
    for (std::size_t c = 0; c < kNumPolarities; ++c) {
      auto row = r.row(v);
      m.insert(m.end(), row.begin(), row.end());
    }
    return m;
  };
  auto read_triple = [&r](std::string_view key) {
    std::istringstream ss(r.field(key));
    std::array<double, kNumPolarities> a{};
    std::string tok;
    for (auto& x : a) {
      if (!(ss >> tok)) r.fail("expected three values for '" + std::string(key) + "'");
      x = r.to_double(tok);
    }
    return a;
  };

  std::optional<ClassifierModel> model;
  if (spec.family == Family::Lexicon) {
    int window = static_cast<int>(r.count("negation_window"));
    std::size_t n = r.count("lexicon");
    std::unordered_map<std::string, int> valence;
    for (std::size_t i = 0; i < n; ++i) {
      std::string s = r.line();
      auto tab = s.find('\t');
      int v = 0;
      if (tab == std::string::npos ||
          std::from_chars(s.data() + tab + 1, s.data() + s.size(), v).ec != std::errc{}) {
        r.fail("bad lexicon entry");
      }
      valence.emplace(s.substr(0, tab), v);
    }
    model.emplace(spec, LexiconModel(std::move(valence), window));
  } else {
    std::size_t v = r.count("vocabulary");
    Vocabulary vocab = Vocabulary::read(r.stream(), v);
    r.skip(v);
    if (spec.family == Family::NaiveBayes) {
      auto prior = read_triple("log_prior");
      auto ll = read_matrix("log_likelihood", v);
      model.emplace(spec, NaiveBayesModel(std::move(vocab), prior, std::move(ll), spec.params.alpha));
    } else {
      auto bias = read_triple("bias");
      auto w = read_matrix("weights", v);
      model.emplace(spec, LogisticModel(std::move(vocab), std::move(w), bias));
    }
  }
  if (r.line() != "end") r.fail("expected 'end'");
  return std::move(*model);
}

void save_model(const std::filesystem::path& path, const ClassifierModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write model file '" + path.string() + "'");
  write_model(out, model);
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

ClassifierModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open model file '" + path.string() + "'");
  return read_model(in);
}

}  // namespace sevote
