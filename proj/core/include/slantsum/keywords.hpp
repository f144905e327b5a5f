#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "slantsum/corpus.hpp"
#include "slantsum/pipeline.hpp"

namespace slantsum {

struct KeywordScore {
  std::string word;
  std::uint64_t a = 0;         // occurrences in the article
  std::uint64_t observed = 0;  // occurrences in the target class corpus
  double expected = 0.0;       // n * p_word * p_class
  double d = 0.0;              // observed - expected
  double score = 0.0;          // a * d (times importance when enabled)

  bool operator==(const KeywordScore&) const = default;
};

// Contingency table of word/class occurrence counts with expected counts
// E[i][j] = n * p_i * p_j, where n is the total occurrence count, p_i the
// share of word i and p_j the share of class j.
class ExpectedCounts {
 public:
  // Throws ConfigError when the stats hold no occurrences. `stats` must
  // outlive this object.
  explicit ExpectedCounts(const ClassWordStats& stats);

  double expected(std::string_view word, std::size_t cls) const;
  std::uint64_t observed(std::string_view word, std::size_t cls) const;
  std::uint64_t word_total(std::string_view word) const;
  std::uint64_t class_total(std::size_t cls) const { return class_totals_[cls]; }
  std::uint64_t n() const { return n_; }
  const ClassWordStats& stats() const { return stats_; }

 private:
  const ClassWordStats& stats_;
  std::array<std::uint64_t, 2> class_totals_{0, 0};
  std::uint64_t n_ = 0;
};

struct KeywordConfig {
  std::size_t limit = 15;
  // Multiply each score by the forest importance of the word's unigram
  // feature (0 when the word is not a vocabulary feature).
  bool use_feature_importance = false;
};

// Article unigrams (pipeline tokenizer) scored by a * (observed - expected)
// for `target_class`. Only positive scores are kept; sorted by score
// descending then word ascending; at most config.limit entries.
std::vector<KeywordScore> recommend(const Article& article,
                                    const FittedPipeline& pipeline,
                                    std::string_view target_class,
                                    const KeywordConfig& config = {});

std::string keywords_to_json(const std::vector<KeywordScore>& keywords);

}  // namespace slantsum
