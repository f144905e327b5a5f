#include "slantsum/summarizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"

#include "slantsum/error.hpp"
#include "text_util.hpp"

namespace slantsum {

std::string Summary::text() const {
  std::string out;
  for (const auto& s : sentences) {
    if (!out.empty()) out.push_back(' ');
    out += s.text;
  }
  return out;
}

WordFrequency::WordFrequency(std::span<const std::string> article_sentences) {
  for (const auto& sentence : article_sentences) {
    for (auto& word : detail::alnum_words(sentence)) ++counts_[std::move(word)];
  }
}

std::size_t WordFrequency::count(std::string_view word) const {
  auto it = counts_.find(word);
  return it == counts_.end() ? 0 : it->second;
}

double WordFrequency::base_score(std::string_view sentence) const {
  double score = 0.0;
  for (const auto& word : detail::alnum_words(sentence))
    score += static_cast<double>(count(word));
  return score;
}

double base_score(std::span<const std::string> article_sentences,
                  std::string_view sentence) {
  return WordFrequency(article_sentences).base_score(sentence);
}

std::size_t word_count(std::string_view sentence) {
  std::size_t n = 0;
  bool in_word = false;
  for (char c : sentence) {
    if (detail::is_space(c)) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++n;
    }
  }
  return n;
}

std::size_t char_length(std::string_view text) {
  return static_cast<std::size_t>(std::count_if(
      text.begin(), text.end(),
      [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

double lwf(std::size_t length, double a, double b, double c) {
  const double l = static_cast<double>(length);
  const double q = a * l * l + b * l + c;
  if (q >= 1.0) return 1.0;
  if (q > 0.0) return q;
  return 0.0;
}

double weighted_score(double base, double p1, double x, std::size_t length,
                      const SummaryConfig& config) {
  // std::pow(0, 0) is 1, so x = 0 switches class weighting off.
  return std::pow(p1, x) * base *
         lwf(length, config.lwf_a, config.lwf_b, config.lwf_c);
}

std::vector<std::size_t> select_sentences(std::span<const ScoredSentence> scored,
                                          std::size_t max_chars) {
  std::vector<std::size_t> order(scored.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scored[a].weighted != scored[b].weighted)
      return scored[a].weighted > scored[b].weighted;
    return scored[a].position < scored[b].position;
  });

  std::vector<std::size_t> chosen;
  std::size_t used = 0;
  for (std::size_t idx : order) {
    const std::size_t len = char_length(scored[idx].text);
    const std::size_t sep = chosen.empty() ? 0 : 1;
    if (chosen.empty() || used + sep + len <= max_chars) {
      chosen.push_back(idx);
      used += sep + len;
    }
  }
  std::sort(chosen.begin(), chosen.end(), [&](std::size_t a, std::size_t b) {
    return scored[a].position < scored[b].position;
  });
  return chosen;
}

std::vector<ScoredSentence> score_sentences(std::span<const std::string> sentences,
                                            std::span<const double> class_probs,
                                            const SummaryConfig& config) {
  if (sentences.size() != class_probs.size())
    throw ConfigError("one class probability per sentence required");
  if (config.exponent_x < 0.0) throw ConfigError("exponent_x must be >= 0");
  const WordFrequency freq(sentences);
  std::vector<ScoredSentence> scored;
  scored.reserve(sentences.size());
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    ScoredSentence s;
    s.position = i;
    s.text = sentences[i];
    s.word_count = word_count(s.text);
    s.base_score = freq.base_score(s.text);
    s.class_prob = class_probs[i];
    s.lwf = lwf(s.word_count, config.lwf_a, config.lwf_b, config.lwf_c);
    s.weighted = weighted_score(s.base_score, s.class_prob, config.exponent_x,
                                s.word_count, config);
    scored.push_back(std::move(s));
  }
  return scored;
}

Summary summarize(const Article& article, const FittedPipeline& pipeline,
                  const SummaryConfig& config) {
  if (config.max_chars < config.min_chars)
    throw ConfigError("max_chars must be >= min_chars");
  const std::size_t target = pipeline.class_index(config.target_class);
  const auto sentences = split_sentences(article.body);
  if (sentences.empty())
    throw ConfigError("article '" + article.article_id + "' has no sentences");

  std::vector<double> probs;
  probs.reserve(sentences.size());
  for (const auto& s : sentences) probs.push_back(pipeline.predict_proba(s)[target]);
  auto scored = score_sentences(sentences, probs, config);

  Summary summary;
  summary.title = article.title;
  summary.target_class = config.target_class;
  for (std::size_t idx : select_sentences(scored, config.max_chars))
    summary.sentences.push_back(scored[idx]);
  summary.char_count = char_length(summary.text());
  summary.below_min_chars = summary.char_count < config.min_chars;
  return summary;
}

std::string summary_to_json(const Summary& summary) {
  nlohmann::ordered_json doc;
  doc["title"] = summary.title;
  doc["target_class"] = summary.target_class;
  doc["char_count"] = summary.char_count;
  auto sentences = nlohmann::ordered_json::array();
  for (const auto& s : summary.sentences) {
    nlohmann::ordered_json j;
    j["position"] = s.position;
    j["text"] = s.text;
    j["class_prob"] = s.class_prob;
    j["base_score"] = s.base_score;
    j["lwf"] = s.lwf;
    j["weighted"] = s.weighted;
    sentences.push_back(std::move(j));
  }
  doc["sentences"] = std::move(sentences);
  return doc.dump(2) + "\n";
}

Summary summary_from_json(std::string_view document) {
  try {
    const auto doc = nlohmann::json::parse(document);
    Summary summary;
    summary.title = doc.at("title").get<std::string>();
    summary.target_class = doc.at("target_class").get<std::string>();
    for (const auto& j : doc.at("sentences")) {
      ScoredSentence s;
      s.position = j.at("position").get<std::size_t>();
      s.text = j.at("text").get<std::string>();
      s.word_count = word_count(s.text);
      s.class_prob = j.at("class_prob").get<double>();
      s.base_score = j.at("base_score").get<double>();
      s.lwf = j.at("lwf").get<double>();
      s.weighted = j.at("weighted").get<double>();
      summary.sentences.push_back(std::move(s));
    }
    summary.char_count = doc.at("char_count").get<std::size_t>();
    return summary;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid summary document: ") + e.what());
  }
}

}  // namespace slantsum
