#include <benchmark/benchmark.h>

#include "slantsum/balance.hpp"
#include "slantsum/forest.hpp"
#include "slantsum/pipeline.hpp"
#include "slantsum/rng.hpp"
#include "slantsum/summarizer.hpp"
#include "slantsum/vectorizer.hpp"

namespace slantsum {
namespace {

std::string word(Rng& rng, std::size_t vocab) {
  static const char* syllables[] = {"ba", "ko", "ri", "tu", "ne", "sa", "lo", "mi"};
  std::size_t id = rng.uniform_index(vocab);
  std::string w;
  for (int i = 0; i < 3; ++i, id /= 8) w += syllables[id % 8];
  return w;
}

std::string sentence(Rng& rng, const char* marker) {
  std::string s = "The";
  const std::size_t n = 8 + rng.uniform_index(8);
  for (std::size_t i = 0; i < n; ++i) s += " " + word(rng, 400);
  return s + " " + marker + ".";
}

Dataset make_dataset(std::size_t n) {
  Rng rng(11);
  Dataset d;
  d.labels = {"left", "right"};
  for (std::size_t i = 0; i < n; ++i) {
    const bool left = rng.uniform01() < 0.7;
    d.sentences.push_back({"a" + std::to_string(i / 10), i % 10,
                           sentence(rng, left ? "alpha" : "omega"), left ? "left" : "right"});
  }
  return d;
}

std::vector<std::string> texts(const Dataset& d) {
  std::vector<std::string> out;
  for (const auto& s : d.sentences) out.push_back(s.text);
  return out;
}

void BM_VectorizerFit(benchmark::State& state) {
  const auto t = texts(make_dataset(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) {
    TfidfVectorizer v(Analyzer({}, Stopwords::english()));
    v.fit(t);
    benchmark::DoNotOptimize(v.vocabulary().size());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_VectorizerFit)->Arg(500)->Arg(2000);

void BM_VectorizerTransform(benchmark::State& state) {
  const auto t = texts(make_dataset(2000));
  TfidfVectorizer v(Analyzer({}, Stopwords::english()));
  v.fit(t);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(v.transform(t[i++ % t.size()]));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_VectorizerTransform);

std::vector<SparseVector> vectors(std::size_t n) {
  const auto t = texts(make_dataset(n));
  TfidfVectorizer v(Analyzer({}, Stopwords::english()));
  v.fit(t);
  std::vector<SparseVector> out;
  for (const auto& s : t) out.push_back(v.transform(s));
  return out;
}

void BM_Smote(benchmark::State& state) {
  const auto m = vectors(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(smote(m, m.size() * 4, SmoteConfig{5, 3}));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 3);
}
BENCHMARK(BM_Smote)->Arg(100)->Arg(400);

void BM_ForestTrain(benchmark::State& state) {
  const Dataset d = make_dataset(1000);
  const auto t = texts(d);
  TfidfVectorizer v(Analyzer({}, Stopwords::english()));
  v.fit(t);
  std::vector<SparseVector> x;
  std::vector<std::size_t> y;
  for (const auto& s : d.sentences) {
    x.push_back(v.transform(s.text));
    y.push_back(d.class_index(s.label));
  }
  ForestConfig cfg;
  cfg.n_trees = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        ForestModel::train(x, y, v.vocabulary().size(), d.labels, cfg));
}
BENCHMARK(BM_ForestTrain)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_Summarize(benchmark::State& state) {
  const Dataset d = make_dataset(1000);
  PipelineConfig cfg;
  cfg.forest.n_trees = 30;
  const FittedPipeline p = fit_pipeline(d, cfg);
  Rng rng(5);
  Article a{"bench", std::nullopt, "Bench", ""};
  for (int i = 0; i < 20; ++i) a.body += sentence(rng, i % 3 ? "alpha" : "omega") + " ";
  SummaryConfig sc;
  sc.target_class = "right";
  sc.exponent_x = 2.0;
  for (auto _ : state) benchmark::DoNotOptimize(summarize(a, p, sc));
}
BENCHMARK(BM_Summarize)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace slantsum

BENCHMARK_MAIN();
