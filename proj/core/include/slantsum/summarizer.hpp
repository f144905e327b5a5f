#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slantsum/corpus.hpp"
#include "slantsum/pipeline.hpp"

namespace slantsum {

struct SummaryConfig {
  std::string target_class;
  double exponent_x = 2.0;
  double lwf_a = -1.0 / 2048.0;
  double lwf_b = 0.0;
  double lwf_c = 1.1;
  std::size_t max_chars = 1000;
  // Reported through Summary::below_min_chars, never enforced.
  std::size_t min_chars = 280;
};

struct ScoredSentence {
  std::size_t position = 0;
  std::string text;
  std::size_t word_count = 0;  // whitespace-separated words
  double base_score = 0.0;
  double class_prob = 0.0;
  double lwf = 0.0;
  double weighted = 0.0;
};

struct Summary {
  std::string title;
  std::string target_class;
  std::vector<ScoredSentence> sentences;  // selected, in document order
  std::size_t char_count = 0;             // code points in text()
  bool below_min_chars = false;

  // Selected sentences joined by single spaces.
  std::string text() const;
};

// Article-wide occurrence counts of lowercased alphanumeric words,
// stopwords included.
class WordFrequency {
 public:
  explicit WordFrequency(std::span<const std::string> article_sentences);
  std::size_t count(std::string_view word) const;
  // Sum of article counts over every word occurrence in `sentence`.
  double base_score(std::string_view sentence) const;

 private:
  std::map<std::string, std::size_t, std::less<>> counts_;
};

double base_score(std::span<const std::string> article_sentences,
                  std::string_view sentence);

std::size_t word_count(std::string_view sentence);

// Number of UTF-8 code points.
std::size_t char_length(std::string_view text);

// q = a*l^2 + b*l + c, clamped: 1 when q >= 1, q when 0 < q < 1, else 0.
double lwf(std::size_t length, double a, double b, double c);

// p1^x * base * lwf(length) with 0^0 = 1.
double weighted_score(double base, double p1, double x, std::size_t length,
                      const SummaryConfig& config);

// Greedy selection: rank by weighted score (ties to the lower position) and
// take each sentence that still fits in max_chars (code points), counting
// one separator character between sentences. The top-ranked sentence is always taken.
// Returns selected indices in document order.
std::vector<std::size_t> select_sentences(
    std::span<const ScoredSentence> scored, std::size_t max_chars);

// Scores every sentence against precomputed class probabilities of the
// target class. Used by summarize and by tests with hand-set probabilities.
std::vector<ScoredSentence> score_sentences(
    std::span<const std::string> sentences,
    std::span<const double> class_probs, const SummaryConfig& config);

// Throws ConfigError for an article with no sentences or an unknown class.
Summary summarize(const Article& article, const FittedPipeline& pipeline,
                  const SummaryConfig& config);

std::string summary_to_json(const Summary& summary);
// Accepts the document written by summary_to_json.
Summary summary_from_json(std::string_view document);

}  // namespace slantsum
