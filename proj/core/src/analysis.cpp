#include "slantsum/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "slantsum/error.hpp"

namespace slantsum {

Explanation explain(std::string_view sentence, const FittedPipeline& pipeline,
                    std::string_view target_class) {
  const std::size_t target = pipeline.class_index(target_class);
  const auto& forest = pipeline.forest();
  Explanation out;
  out.sentence = std::string(sentence);
  out.target_class = std::string(target_class);
  out.prior_prob = forest.predict_proba(SparseVector())[target];

  const SparseVector x = pipeline.transform(sentence);
  out.predicted_prob = forest.predict_proba(x)[target];
  for (const auto& e : x.entries()) {
    const double ablated = forest.predict_proba(x.without(e.index))[target];
    out.contributions.push_back({pipeline.vectorizer().vocabulary().term(e.index),
                                 out.predicted_prob - ablated});
  }
  std::sort(out.contributions.begin(), out.contributions.end(),
            [](const Contribution& a, const Contribution& b) {
              const double wa = std::abs(a.weight), wb = std::abs(b.weight);
              if (wa != wb) return wa > wb;
              return a.feature < b.feature;
            });
  return out;
}

std::string format_explanation(const Explanation& e) {
  std::string out;
  char line[1024];
  std::snprintf(line, sizeof line, "P(%s) = %.3f  (prior %.3f)\n",
                e.target_class.c_str(), e.predicted_prob, e.prior_prob);
  out += line;
  std::snprintf(line, sizeof line, "%-8s %-24s %-8s %s\n", "Weight", "Feature",
                "Weight", "Feature");
  out += line;
  const auto& c = e.contributions;
  for (std::size_t i = 0; i < c.size(); i += 2) {
    if (i + 1 < c.size()) {
      std::snprintf(line, sizeof line, "%+8.3f %-24s %+8.3f %s\n", c[i].weight,
                    c[i].feature.c_str(), c[i + 1].weight,
                    c[i + 1].feature.c_str());
    } else {
      std::snprintf(line, sizeof line, "%+8.3f %s\n", c[i].weight,
                    c[i].feature.c_str());
    }
    out += line;
  }
  return out;
}

namespace {

double mean(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

}  // namespace

DriftReport drift_from_probs(std::vector<double> article_probs,
                             std::vector<double> summary_probs) {
  if (summary_probs.empty()) throw ConfigError("drift: summary is empty");
  if (article_probs.empty()) throw ConfigError("drift: article is empty");
  DriftReport r;
  r.article_probs = std::move(article_probs);
  r.summary_probs = std::move(summary_probs);
  r.article_mean_prob = mean(r.article_probs);
  r.summary_mean_prob = mean(r.summary_probs);
  r.drift = std::abs(r.summary_mean_prob - r.article_mean_prob);
  return r;
}

DriftReport drift_score(std::span<const std::string> article_sentences,
                        std::span<const std::string> summary_sentences,
                        const FittedPipeline& pipeline,
                        std::string_view target_class) {
  const std::size_t target = pipeline.class_index(target_class);
  std::vector<double> a, s;
  for (const auto& t : article_sentences)
    a.push_back(pipeline.predict_proba(t)[target]);
  for (const auto& t : summary_sentences)
    s.push_back(pipeline.predict_proba(t)[target]);
  return drift_from_probs(std::move(a), std::move(s));
}

DriftReport drift_score(const Article& article, const Summary& summary,
                        const FittedPipeline& pipeline,
                        std::string_view target_class) {
  const std::size_t target = pipeline.class_index(target_class);
  const auto sentences = split_sentences(article.body);
  std::vector<double> a;
  for (const auto& t : sentences) a.push_back(pipeline.predict_proba(t)[target]);
  std::vector<double> s;
  for (const auto& picked : summary.sentences) {
    if (picked.position >= sentences.size())
      throw ConfigError("drift: summary position " +
                        std::to_string(picked.position) +
                        " is outside the article");
    s.push_back(a[picked.position]);
  }
  return drift_from_probs(std::move(a), std::move(s));
}

}  // namespace slantsum
