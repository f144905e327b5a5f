#include "slantsum/vectorizer.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "embedded_data.hpp"
#include "slantsum/error.hpp"
#include "slantsum/io.hpp"
#include "text_util.hpp"

namespace slantsum {

SparseVector::SparseVector(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.index < b.index; });
  for (const auto& e : entries) {
    if (!entries_.empty() && entries_.back().index == e.index) {
      entries_.back().value += e.value;
    } else {
      entries_.push_back(e);
    }
  }
  std::erase_if(entries_, [](const Entry& e) { return e.value == 0.0; });
}

double SparseVector::at(std::uint32_t index) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), index,
      [](const Entry& e, std::uint32_t i) { return e.index < i; });
  return it != entries_.end() && it->index == index ? it->value : 0.0;
}

double SparseVector::norm() const {
  double sum = 0.0;
  for (const auto& e : entries_) sum += e.value * e.value;
  return std::sqrt(sum);
}

SparseVector SparseVector::without(std::uint32_t index) const {
  SparseVector out;
  for (const auto& e : entries_) {
    if (e.index != index) out.entries_.push_back(e);
  }
  double n = out.norm();
  if (n > 0.0) {
    for (auto& e : out.entries_) e.value /= n;
  }
  return out;
}

double squared_distance(const SparseVector& a, const SparseVector& b) {
  const auto& x = a.entries();
  const auto& y = b.entries();
  std::size_t i = 0, j = 0;
  double sum = 0.0;
  while (i < x.size() || j < y.size()) {
    double d;
    if (j == y.size() || (i < x.size() && x[i].index < y[j].index)) {
      d = x[i++].value;
    } else if (i == x.size() || y[j].index < x[i].index) {
      d = y[j++].value;
    } else {
      d = x[i++].value - y[j++].value;
    }
    sum += d * d;
  }
  return sum;
}

Stopwords::Stopwords(std::vector<std::string> words) : words_(std::move(words)) {
  std::sort(words_.begin(), words_.end());
  words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
  set_.insert(words_.begin(), words_.end());
}

const Stopwords& Stopwords::english() {
  static const Stopwords list(
      detail::nonempty_lines(detail::embedded_stopwords()));
  return list;
}

Stopwords Stopwords::load(const std::filesystem::path& path) {
  return Stopwords(detail::nonempty_lines(read_file(path)));
}

std::vector<std::string> tokenize(std::string_view text,
                                  const Stopwords& stopwords,
                                  std::size_t min_token_len) {
  std::vector<std::string> tokens;
  for (auto& word : detail::alnum_words(text)) {
    if (word.size() >= min_token_len && !stopwords.contains(word))
      tokens.push_back(std::move(word));
  }
  return tokens;
}

std::vector<std::string> ngrams(std::span<const std::string> tokens,
                                std::size_t n_min, std::size_t n_max) {
  if (n_min < 1 || n_min > n_max)
    throw ConfigError("n-gram range requires 1 <= n_min <= n_max");
  std::vector<std::string> out;
  for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
    std::string gram;
    for (std::size_t n = 1; n <= n_max && pos + n <= tokens.size(); ++n) {
      if (n > 1) gram.push_back(' ');
      gram += tokens[pos + n - 1];
      if (n >= n_min) out.push_back(gram);
    }
  }
  return out;
}

Analyzer::Analyzer(VectorizerConfig config, Stopwords stopwords)
    : config_(config), stopwords_(std::move(stopwords)) {
  if (config_.ngram_min < 1 || config_.ngram_min > config_.ngram_max)
    throw ConfigError("n-gram range requires 1 <= ngram_min <= ngram_max");
  if (config_.min_token_len < 1)
    throw ConfigError("min_token_len must be >= 1");
}

std::vector<std::string> Analyzer::tokenize(std::string_view text) const {
  return slantsum::tokenize(text, stopwords_, config_.min_token_len);
}

std::vector<std::string> Analyzer::features(std::string_view text) const {
  if (!config_.keep_stopwords_in_ngrams)
    return ngrams(tokenize(text), config_.ngram_min, config_.ngram_max);

  static const Stopwords kNone;
  const auto all = slantsum::tokenize(text, kNone, config_.min_token_len);
  std::vector<std::string> out;
  for (std::size_t pos = 0; pos < all.size(); ++pos) {
    std::string gram;
    for (std::size_t n = 1; n <= config_.ngram_max && pos + n <= all.size();
         ++n) {
      if (n > 1) gram.push_back(' ');
      gram += all[pos + n - 1];
      if (n < config_.ngram_min) continue;
      if (n == 1 && stopwords_.contains(gram)) continue;
      out.push_back(gram);
    }
  }
  return out;
}

double smoothed_idf(std::uint64_t n_documents,
                    std::uint64_t document_frequency) {
  return std::log((1.0 + static_cast<double>(n_documents)) /
                  (1.0 + static_cast<double>(document_frequency))) +
         1.0;
}

Vocabulary::Vocabulary(std::vector<std::string> terms,
                       std::vector<std::uint64_t> document_frequency,
                       std::uint64_t n_documents)
    : terms_(std::move(terms)),
      df_(std::move(document_frequency)),
      n_documents_(n_documents) {
  if (terms_.size() != df_.size())
    throw FormatError("vocabulary: terms and df lengths differ");
  idf_.reserve(terms_.size());
  index_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i > 0 && !(terms_[i - 1] < terms_[i]))
      throw FormatError("vocabulary: terms not strictly increasing at '" +
                        terms_[i] + "'");
    if (df_[i] < 1 || df_[i] > n_documents_)
      throw FormatError("vocabulary: df out of range for '" + terms_[i] + "'");
    idf_.push_back(smoothed_idf(n_documents_, df_[i]));
    index_.emplace(terms_[i], static_cast<std::uint32_t>(i));
  }
}

Vocabulary Vocabulary::fit(
    const std::vector<std::vector<std::string>>& documents) {
  if (documents.empty()) throw ConfigError("empty vocabulary: no sentences");
  std::map<std::string, std::uint64_t> df;
  for (const auto& doc : documents) {
    std::vector<std::string> unique = doc;
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    for (auto& term : unique) ++df[std::move(term)];
  }
  if (df.empty()) throw ConfigError("empty vocabulary");
  std::vector<std::string> terms;
  std::vector<std::uint64_t> counts;
  terms.reserve(df.size());
  counts.reserve(df.size());
  for (auto& [term, count] : df) {
    terms.push_back(term);
    counts.push_back(count);
  }
  return Vocabulary(std::move(terms), std::move(counts), documents.size());
}

std::optional<std::uint32_t> Vocabulary::index_of(std::string_view term) const {
  auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void TfidfVectorizer::fit(std::span<const std::string> sentences) {
  std::vector<std::vector<std::string>> documents;
  documents.reserve(sentences.size());
  for (const auto& s : sentences) documents.push_back(analyzer_.features(s));
  vocabulary_ = Vocabulary::fit(documents);
}

SparseVector TfidfVectorizer::transform(std::string_view sentence) const {
  std::map<std::uint32_t, double> counts;
  for (const auto& f : analyzer_.features(sentence)) {
    if (auto idx = vocabulary_.index_of(f)) counts[*idx] += 1.0;
  }
  std::vector<SparseVector::Entry> entries;
  entries.reserve(counts.size());
  double sum = 0.0;
  for (const auto& [idx, count] : counts) {
    double v = count * vocabulary_.idf()[idx];
    entries.push_back({idx, v});
    sum += v * v;
  }
  const double norm = std::sqrt(sum);
  for (auto& e : entries) e.value /= norm;
  return SparseVector(std::move(entries));
}

}  // namespace slantsum
