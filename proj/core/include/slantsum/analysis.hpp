#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slantsum/corpus.hpp"
#include "slantsum/pipeline.hpp"
#include "slantsum/summarizer.hpp"

namespace slantsum {

struct Contribution {
  std::string feature;
  double weight = 0.0;
};

// Ablation importance of each n-gram feature of one sentence: the drop in
// target-class probability when that feature is zeroed and the vector
// re-normalized.
struct Explanation {
  std::string sentence;
  std::string target_class;
  double predicted_prob = 0.0;
  // Probability of the empty vector (no known features).
  double prior_prob = 0.0;
  // Sorted by |weight| descending, then feature ascending.
  std::vector<Contribution> contributions;
};

Explanation explain(std::string_view sentence, const FittedPipeline& pipeline,
                    std::string_view target_class);

// Two weight/feature column pairs per row.
std::string format_explanation(const Explanation& explanation);

struct DriftReport {
  double article_mean_prob = 0.0;
  double summary_mean_prob = 0.0;
  double drift = 0.0;  // |summary_mean_prob - article_mean_prob|
  std::vector<double> article_probs;
  std::vector<double> summary_probs;
};

// Mean target-class probability of the summary sentences against that of
// all article sentences. Throws ConfigError for an empty summary.
DriftReport drift_score(std::span<const std::string> article_sentences,
                        std::span<const std::string> summary_sentences,
                        const FittedPipeline& pipeline,
                        std::string_view target_class);

// Summary positions must index the article's sentences.
DriftReport drift_score(const Article& article, const Summary& summary,
                        const FittedPipeline& pipeline,
                        std::string_view target_class);

// Drift from precomputed per-sentence probabilities.
DriftReport drift_from_probs(std::vector<double> article_probs,
                             std::vector<double> summary_probs);

}  // namespace slantsum
