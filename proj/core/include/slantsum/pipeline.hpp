#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slantsum/corpus.hpp"
#include "slantsum/forest.hpp"
#include "slantsum/vectorizer.hpp"

namespace slantsum {

inline constexpr int kModelFormatVersion = 1;

// Per-class unigram occurrence counts of the training sentences.
using WordCounts = std::map<std::string, std::uint64_t, std::less<>>;
using ClassWordStats = std::array<WordCounts, 2>;

// Stage seeds (SMOTE, forest) all derive from `seed`; forest.seed is
// ignored.
struct PipelineConfig {
  VectorizerConfig vectorizer;
  Stopwords stopwords = Stopwords::english();
  bool smote = true;
  std::size_t smote_k_neighbors = 5;
  ForestConfig forest;
  std::uint64_t seed = 0;
};

struct FitStats {
  std::array<std::size_t, 2> raw_class_sizes{0, 0};
  std::array<std::size_t, 2> balanced_class_sizes{0, 0};
  std::size_t vocabulary_size = 0;
};

class FittedPipeline {
 public:
  FittedPipeline(TfidfVectorizer vectorizer, ForestModel forest,
                 ClassWordStats class_word_stats, PipelineConfig config);

  SparseVector transform(std::string_view sentence) const {
    return vectorizer_.transform(sentence);
  }
  ClassProbabilities predict_proba(std::string_view sentence) const {
    return forest_.predict_proba(transform(sentence));
  }
  std::size_t predict(std::string_view sentence) const {
    return forest_.predict(transform(sentence));
  }

  // Throws ConfigError for a name that is not one of classes().
  std::size_t class_index(std::string_view name) const;

  const TfidfVectorizer& vectorizer() const { return vectorizer_; }
  const ForestModel& forest() const { return forest_; }
  const std::array<std::string, 2>& classes() const { return forest_.classes(); }
  const ClassWordStats& class_word_stats() const { return class_word_stats_; }
  const PipelineConfig& config() const { return config_; }
  std::uint64_t seed() const { return config_.seed; }

  bool operator==(const FittedPipeline& other) const;

 private:
  TfidfVectorizer vectorizer_;
  ForestModel forest_;
  ClassWordStats class_word_stats_;
  PipelineConfig config_;
};

// TF-IDF fit over all sentences, SMOTE balancing (unless disabled), forest
// training on the balanced vectors. Word stats come from the raw sentences.
FittedPipeline fit_pipeline(const Dataset& dataset, const PipelineConfig& config,
                            FitStats* stats = nullptr);

struct ClassReport {
  std::size_t samples = 0;
  double precision = 0.0;
  double recall = 0.0;
};

struct EvalReport {
  std::array<std::string, 2> classes;
  std::array<ClassReport, 2> per_class;
  std::size_t samples = 0;
  double precision = 0.0;  // macro average
  double recall = 0.0;     // macro average
  double accuracy = 0.0;
  // confusion[truth][predicted]
  std::array<std::array<std::size_t, 2>, 2> confusion{};
};

struct DatasetSplit {
  Dataset train;
  Dataset test;
};

// Per-class seeded shuffle; round(test_fraction * class size) sentences of
// each class go to the test part. Throws ConfigError if either part would
// lack a class.
DatasetSplit stratified_split(const Dataset& dataset, double test_fraction,
                              std::uint64_t seed);

// Precision with no predicted samples is reported as 0.
EvalReport make_report(const std::array<std::string, 2>& classes,
                       std::span<const std::size_t> truth,
                       std::span<const std::size_t> predicted);

struct Evaluation {
  DatasetSplit split;
  FittedPipeline pipeline;  // fitted on split.train only
  EvalReport report;
};

// Stratified split (seeded by config.seed), fit on the training part only,
// score the test part.
Evaluation run_evaluation(const Dataset& dataset, const PipelineConfig& config,
                          double test_fraction = 0.10);
EvalReport evaluate(const Dataset& dataset, const PipelineConfig& config,
                    double test_fraction = 0.10);

// Table-style rendering: Class / Samples / Precision / Recall / Accuracy.
std::string format_report(const EvalReport& report);

std::string serialize_pipeline(const FittedPipeline& pipeline);
FittedPipeline parse_pipeline(std::string_view archive);
void save_pipeline(const FittedPipeline& pipeline,
                   const std::filesystem::path& path);
FittedPipeline load_pipeline(const std::filesystem::path& path);

}  // namespace slantsum
