#include "slantsum/keywords.hpp"

#include <algorithm>
#include <map>

#include "json.hpp"

#include "slantsum/error.hpp"

namespace slantsum {

ExpectedCounts::ExpectedCounts(const ClassWordStats& stats) : stats_(stats) {
  for (std::size_t c = 0; c < 2; ++c) {
    for (const auto& [word, count] : stats[c]) class_totals_[c] += count;
  }
  n_ = class_totals_[0] + class_totals_[1];
  if (n_ == 0) throw ConfigError("class word stats are empty");
}

std::uint64_t ExpectedCounts::observed(std::string_view word,
                                       std::size_t cls) const {
  auto it = stats_[cls].find(word);
  return it == stats_[cls].end() ? 0 : it->second;
}

std::uint64_t ExpectedCounts::word_total(std::string_view word) const {
  return observed(word, 0) + observed(word, 1);
}

double ExpectedCounts::expected(std::string_view word, std::size_t cls) const {
  const double n = static_cast<double>(n_);
  const double p_word = static_cast<double>(word_total(word)) / n;
  const double p_class = static_cast<double>(class_totals_[cls]) / n;
  return n * p_word * p_class;
}

std::vector<KeywordScore> recommend(const Article& article,
                                    const FittedPipeline& pipeline,
                                    std::string_view target_class,
                                    const KeywordConfig& config) {
  const std::size_t target = pipeline.class_index(target_class);
  const ExpectedCounts table(pipeline.class_word_stats());

  std::map<std::string, std::uint64_t> article_counts;
  for (auto& token : pipeline.vectorizer().analyzer().tokenize(article.body))
    ++article_counts[std::move(token)];

  std::vector<double> importance;
  if (config.use_feature_importance)
    importance = pipeline.forest().feature_importance();

  std::vector<KeywordScore> out;
  for (const auto& [word, a] : article_counts) {
    KeywordScore k;
    k.word = word;
    k.a = a;
    k.observed = table.observed(word, target);
    k.expected = table.expected(word, target);
    k.d = static_cast<double>(k.observed) - k.expected;
    k.score = static_cast<double>(a) * k.d;
    if (config.use_feature_importance) {
      auto idx = pipeline.vectorizer().vocabulary().index_of(word);
      k.score *= idx ? importance[*idx] : 0.0;
    }
    if (k.score > 0.0) out.push_back(std::move(k));
  }
  std::sort(out.begin(), out.end(),
            [](const KeywordScore& x, const KeywordScore& y) {
              if (x.score != y.score) return x.score > y.score;
              return x.word < y.word;
            });
  if (out.size() > config.limit) out.resize(config.limit);
  return out;
}

std::string keywords_to_json(const std::vector<KeywordScore>& keywords) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& k : keywords) {
    nlohmann::ordered_json j;
    j["word"] = k.word;
    j["a"] = k.a;
    j["observed"] = k.observed;
    j["expected"] = k.expected;
    j["d"] = k.d;
    j["score"] = k.score;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

}  // namespace slantsum
