#pragma once

#include <filesystem>
#include <optional>
#include <string_view>

#include "slantsum/keywords.hpp"
#include "slantsum/pipeline.hpp"
#include "slantsum/summarizer.hpp"

namespace slantsum {

// Every tunable of the tool in one document. Missing keys keep their
// defaults; unknown keys are rejected.
//
// {
//   "seed": 0,
//   "vectorizer": {"ngram_min": 1, "ngram_max": 3, "min_token_len": 2,
//                  "keep_stopwords_in_ngrams": false, "stopwords_path": null},
//   "smote": {"enabled": true, "k_neighbors": 5},
//   "forest": {"n_trees": 100, "max_features": "sqrt", "min_leaf": 1,
//              "bootstrap": true},
//   "summarizer": {"exponent_x": 2.0, "lwf_a": -0.00048828125, "lwf_b": 0.0,
//                  "lwf_c": 1.1, "max_chars": 1000, "min_chars": 280},
//   "keywords": {"limit": 15, "use_feature_importance": false}
// }
struct Config {
  PipelineConfig pipeline;
  std::optional<std::filesystem::path> stopwords_path;
  SummaryConfig summary;  // target_class is set per command
  KeywordConfig keywords;
};

// Relative stopwords_path values resolve against `base_dir`.
Config parse_config(std::string_view document,
                    const std::filesystem::path& base_dir = {});
Config load_config(const std::filesystem::path& path);

}  // namespace slantsum
