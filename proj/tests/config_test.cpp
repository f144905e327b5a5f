#include "slantsum/config.hpp"

#include <fstream>

#include <gtest/gtest.h>

#include "slantsum/error.hpp"
#include "support/synthetic.hpp"

namespace slantsum {
namespace {

std::string error_of(std::string_view doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

TEST(Config, EmptyDocumentKeepsDefaults) {
  const Config c = parse_config("{}");
  EXPECT_EQ(c.pipeline.seed, 0u);
  EXPECT_EQ(c.pipeline.vectorizer, VectorizerConfig{});
  EXPECT_EQ(c.pipeline.forest, ForestConfig{});
  EXPECT_TRUE(c.pipeline.smote);
  EXPECT_EQ(c.pipeline.smote_k_neighbors, 5u);
  EXPECT_EQ(c.summary.exponent_x, 2.0);
  EXPECT_EQ(c.summary.lwf_a, -1.0 / 2048.0);
  EXPECT_EQ(c.summary.max_chars, 1000u);
  EXPECT_EQ(c.summary.min_chars, 280u);
  EXPECT_EQ(c.keywords.limit, 15u);
  EXPECT_FALSE(c.keywords.use_feature_importance);
  EXPECT_EQ(c.pipeline.stopwords.size(), 318u);
}

TEST(Config, EverySectionParsed) {
  const Config c = parse_config(R"({
    "seed": 42,
    "vectorizer": {"ngram_min": 1, "ngram_max": 2, "min_token_len": 1,
                   "keep_stopwords_in_ngrams": true, "stopwords_path": null},
    "smote": {"enabled": false, "k_neighbors": 3},
    "forest": {"n_trees": 10, "max_features": "all", "min_leaf": 2, "bootstrap": false},
    "summarizer": {"exponent_x": 4, "lwf_a": -0.001, "lwf_b": 0.01, "lwf_c": 1.0,
                   "max_chars": 280, "min_chars": 100},
    "keywords": {"limit": 5, "use_feature_importance": true}
  })");
  EXPECT_EQ(c.pipeline.seed, 42u);
  EXPECT_EQ(c.pipeline.vectorizer.ngram_max, 2u);
  EXPECT_TRUE(c.pipeline.vectorizer.keep_stopwords_in_ngrams);
  EXPECT_FALSE(c.pipeline.smote);
  EXPECT_EQ(c.pipeline.smote_k_neighbors, 3u);
  EXPECT_EQ(c.pipeline.forest.max_features, MaxFeatures::kAll);
  EXPECT_EQ(c.pipeline.forest.min_leaf, 2u);
  EXPECT_FALSE(c.pipeline.forest.bootstrap);
  EXPECT_EQ(c.summary.exponent_x, 4.0);
  EXPECT_EQ(c.summary.lwf_b, 0.01);
  EXPECT_EQ(c.summary.max_chars, 280u);
  EXPECT_EQ(c.keywords.limit, 5u);
  EXPECT_TRUE(c.keywords.use_feature_importance);
}

TEST(Config, UnknownKeysNamed) {
  EXPECT_NE(error_of(R"({"sede": 1})").find("unknown key 'sede'"), std::string::npos);
  EXPECT_NE(error_of(R"({"forest": {"depth": 3}})").find("unknown key 'forest.depth'"),
            std::string::npos);
}

TEST(Config, TypesAndRangesChecked) {
  EXPECT_NE(error_of(R"({"seed": -1})").find("seed"), std::string::npos);
  EXPECT_NE(error_of(R"({"forest": {"n_trees": "many"}})").find("forest.n_trees"),
            std::string::npos);
  EXPECT_FALSE(error_of(R"({"forest": {"n_trees": 0}})").empty());
  EXPECT_FALSE(error_of(R"({"forest": {"max_features": "log2"}})").empty());
  EXPECT_FALSE(error_of(R"({"summarizer": {"exponent_x": -1}})").empty());
  EXPECT_FALSE(error_of(R"({"summarizer": {"max_chars": 10}})").empty());
  EXPECT_FALSE(error_of(R"({"vectorizer": {"ngram_min": 3, "ngram_max": 2}})").empty());
  EXPECT_FALSE(error_of(R"({"smote": []})").empty());
  EXPECT_FALSE(error_of("not json").empty());
  EXPECT_FALSE(error_of("[1]").empty());
}

TEST(Config, StopwordsPathRelativeToConfigFile) {
  testing::TempDir dir("config");
  std::ofstream(dir.path() / "words.txt") << "alpha\nbeta\n";
  std::ofstream(dir.path() / "c.json") << R"({"vectorizer": {"stopwords_path": "words.txt"}})";
  const Config c = load_config(dir.path() / "c.json");
  ASSERT_TRUE(c.stopwords_path.has_value());
  EXPECT_EQ(c.pipeline.stopwords.words(), (std::vector<std::string>{"alpha", "beta"}));
  EXPECT_THROW(load_config(dir.path() / "absent.json"), IoError);
}

}  // namespace
}  // namespace slantsum
