#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace slantsum {

// Sparse real vector; entries sorted by index, no duplicates, no zeros.
class SparseVector {
 public:
  struct Entry {
    std::uint32_t index;
    double value;
    bool operator==(const Entry&) const = default;
  };

  SparseVector() = default;
  // Sorts, merges duplicate indices by summation and drops zeros.
  explicit SparseVector(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // Value at `index`; 0.0 when absent.
  double at(std::uint32_t index) const;
  double norm() const;

  // Copy with `index` removed and the remainder rescaled to unit L2 norm.
  SparseVector without(std::uint32_t index) const;

  bool operator==(const SparseVector&) const = default;

 private:
  std::vector<Entry> entries_;
};

double squared_distance(const SparseVector& a, const SparseVector& b);

class Stopwords {
 public:
  Stopwords() = default;
  explicit Stopwords(std::vector<std::string> words);

  // The bundled 318-word English list.
  static const Stopwords& english();
  // One lowercase word per line.
  static Stopwords load(const std::filesystem::path& path);

  bool contains(std::string_view word) const {
    return set_.contains(std::string(word));
  }
  // Sorted, unique.
  const std::vector<std::string>& words() const { return words_; }
  std::size_t size() const { return words_.size(); }

 private:
  std::vector<std::string> words_;
  std::unordered_set<std::string> set_;
};

struct VectorizerConfig {
  std::size_t ngram_min = 1;
  std::size_t ngram_max = 3;
  std::size_t min_token_len = 2;
  // When true, n-grams of length >= 2 are formed over the token stream
  // before stopword removal; unigrams still exclude stopwords.
  bool keep_stopwords_in_ngrams = false;

  bool operator==(const VectorizerConfig&) const = default;
};

// Lowercased ASCII alphanumeric runs of at least `min_token_len` characters,
// stopwords removed.
std::vector<std::string> tokenize(std::string_view text,
                                  const Stopwords& stopwords,
                                  std::size_t min_token_len = 2);

// Contiguous n-grams for n in [n_min, n_max], joined by single spaces, in
// (position, n) order.
std::vector<std::string> ngrams(std::span<const std::string> tokens,
                                std::size_t n_min = 1, std::size_t n_max = 3);

// Tokenizer + n-gram analyzer bound to one configuration.
class Analyzer {
 public:
  Analyzer(VectorizerConfig config, Stopwords stopwords);

  std::vector<std::string> tokenize(std::string_view text) const;
  // All n-gram features of `text`, with repetitions.
  std::vector<std::string> features(std::string_view text) const;

  const VectorizerConfig& config() const { return config_; }
  const Stopwords& stopwords() const { return stopwords_; }

 private:
  VectorizerConfig config_;
  Stopwords stopwords_;
};

// Smoothed inverse document frequency: ln((1 + n) / (1 + df)) + 1.
double smoothed_idf(std::uint64_t n_documents, std::uint64_t document_frequency);

class Vocabulary {
 public:
  Vocabulary() = default;
  // Terms must be strictly increasing; 1 <= df <= n_documents.
  Vocabulary(std::vector<std::string> terms,
             std::vector<std::uint64_t> document_frequency,
             std::uint64_t n_documents);

  // One feature list per training sentence. Throws ConfigError when no
  // sentence has any feature ("empty vocabulary").
  static Vocabulary fit(const std::vector<std::vector<std::string>>& documents);

  std::optional<std::uint32_t> index_of(std::string_view term) const;
  const std::string& term(std::uint32_t index) const { return terms_[index]; }
  const std::vector<std::string>& terms() const { return terms_; }
  const std::vector<std::uint64_t>& document_frequency() const { return df_; }
  const std::vector<double>& idf() const { return idf_; }
  std::uint64_t n_documents() const { return n_documents_; }
  std::size_t size() const { return terms_.size(); }

  bool operator==(const Vocabulary& other) const {
    return terms_ == other.terms_ && df_ == other.df_ &&
           n_documents_ == other.n_documents_;
  }

 private:
  std::vector<std::string> terms_;
  std::vector<std::uint64_t> df_;
  std::vector<double> idf_;
  std::uint64_t n_documents_ = 0;
  std::unordered_map<std::string, std::uint32_t> index_;
};

// TF-IDF: raw counts times smoothed idf, L2-normalized.
class TfidfVectorizer {
 public:
  explicit TfidfVectorizer(Analyzer analyzer) : analyzer_(std::move(analyzer)) {}
  TfidfVectorizer(Analyzer analyzer, Vocabulary vocabulary)
      : analyzer_(std::move(analyzer)), vocabulary_(std::move(vocabulary)) {}

  void fit(std::span<const std::string> sentences);
  SparseVector transform(std::string_view sentence) const;

  const Analyzer& analyzer() const { return analyzer_; }
  const Vocabulary& vocabulary() const { return vocabulary_; }

 private:
  Analyzer analyzer_;
  Vocabulary vocabulary_;
};

}  // namespace slantsum
