#include "slantsum/vectorizer.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <gtest/gtest.h>

#include "slantsum/error.hpp"
#include "slantsum/rng.hpp"
#include "support/synthetic.hpp"

namespace slantsum {
namespace {

using Strings = std::vector<std::string>;

TEST(Tokenize, SplitsOnPunctuationAndLowercases) {
  EXPECT_EQ(tokenize("Alexandria Ocasio-Cortez's terrible green", Stopwords::english()),
            (Strings{"alexandria", "ocasio", "cortez", "terrible", "green"}));
}

TEST(Tokenize, DropsStopwordsAndShortTokens) {
  EXPECT_TRUE(tokenize("the of and", Stopwords::english()).empty());
  EXPECT_EQ(tokenize("A b2 c", Stopwords::english()), Strings{"b2"});
  EXPECT_EQ(tokenize("A b2 c", Stopwords{}, 1), (Strings{"a", "b2", "c"}));
}

TEST(Tokenize, NonAsciiBytesSeparate) {
  EXPECT_EQ(tokenize("caf\xc3\xa9 na\xc3\xafve", Stopwords{}), (Strings{"caf", "na", "ve"}));
}

TEST(Stopwords, BundledListIsTheStandardEnglishList) {
  const auto& sw = Stopwords::english();
  EXPECT_EQ(sw.size(), 318u);
  for (const char* w : {"the", "of", "and", "a", "is", "whereupon", "yourselves"})
    EXPECT_TRUE(sw.contains(w)) << w;
  for (const char* w : {"trump", "pandemic", "said", "vaccine"}) EXPECT_FALSE(sw.contains(w)) << w;
}

TEST(Stopwords, LoadFromFile) {
  testing::TempDir dir("stopwords");
  std::ofstream(dir.path() / "sw.txt") << "zeta\n\nalpha\nzeta\n";
  const auto sw = Stopwords::load(dir.path() / "sw.txt");
  EXPECT_EQ(sw.words(), (Strings{"alpha", "zeta"}));
}

TEST(Ngrams, UniBiTrigrams) {
  const Strings tokens{"way", "of", "life"};
  const auto grams = ngrams(tokens, 1, 3);
  EXPECT_EQ(std::multiset<std::string>(grams.begin(), grams.end()),
            (std::multiset<std::string>{"way", "of", "life", "way of", "of life", "way of life"}));
  EXPECT_TRUE(ngrams(Strings{}, 1, 3).empty());
  const Strings ab{"a", "b"};
  const auto two = ngrams(ab, 1, 3);
  EXPECT_EQ(std::multiset<std::string>(two.begin(), two.end()),
            (std::multiset<std::string>{"a", "b", "a b"}));
}

TEST(Ngrams, RangeValidated) {
  const Strings t{"a"};
  EXPECT_THROW(ngrams(t, 0, 2), ConfigError);
  EXPECT_THROW(ngrams(t, 3, 2), ConfigError);
  EXPECT_EQ(ngrams(Strings{"a", "b", "c"}, 2, 2), (Strings{"a b", "b c"}));
}

TEST(Analyzer, PostStopwordStreamByDefault) {
  Analyzer analyzer({}, Stopwords::english());
  const auto f = analyzer.features("way of life");
  EXPECT_EQ(std::set<std::string>(f.begin(), f.end()),
            (std::set<std::string>{"way", "life", "way life"}));
}

TEST(Analyzer, KeepStopwordsInNgrams) {
  VectorizerConfig cfg;
  cfg.keep_stopwords_in_ngrams = true;
  Analyzer analyzer(cfg, Stopwords::english());
  const auto f = analyzer.features("way of life");
  EXPECT_EQ(std::set<std::string>(f.begin(), f.end()),
            (std::set<std::string>{"way", "life", "way of", "of life", "way of life"}));
}

TEST(Analyzer, RejectsBadConfig) {
  VectorizerConfig cfg;
  cfg.ngram_min = 0;
  EXPECT_THROW(Analyzer(cfg, Stopwords{}), ConfigError);
  cfg = {};
  cfg.min_token_len = 0;
  EXPECT_THROW(Analyzer(cfg, Stopwords{}), ConfigError);
}

TfidfVectorizer letters_vectorizer() {
  VectorizerConfig cfg;
  cfg.min_token_len = 1;
  return TfidfVectorizer(Analyzer(cfg, Stopwords{}));
}

TEST(Vocabulary, HandCountedDocumentFrequencies) {
  auto v = letters_vectorizer();
  const Strings sentences{"a b", "a c"};
  v.fit(sentences);
  const auto& vocab = v.vocabulary();
  EXPECT_EQ(vocab.terms(), (Strings{"a", "a b", "a c", "b", "c"}));
  EXPECT_EQ(vocab.document_frequency()[*vocab.index_of("a")], 2u);
  EXPECT_EQ(vocab.document_frequency()[*vocab.index_of("b")], 1u);
  EXPECT_EQ(vocab.n_documents(), 2u);
  EXPECT_EQ(vocab.idf()[*vocab.index_of("a")], 1.0);
  EXPECT_DOUBLE_EQ(vocab.idf()[*vocab.index_of("b")], std::log(3.0 / 2.0) + 1.0);
}

TEST(Vocabulary, FullDocumentFrequencyGivesUnitIdf) {
  EXPECT_EQ(smoothed_idf(1, 1), 1.0);
  EXPECT_EQ(smoothed_idf(57, 57), 1.0);
  auto v = letters_vectorizer();
  const Strings one{"x y"};
  v.fit(one);
  EXPECT_EQ(v.vocabulary().idf()[*v.vocabulary().index_of("x")], 1.0);
}

TEST(Vocabulary, EmptyVocabularyRejected) {
  TfidfVectorizer v(Analyzer({}, Stopwords::english()));
  const Strings stop{"the of and", "a an"};
  try {
    v.fit(stop);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("empty vocabulary"), std::string::npos);
  }
}

TEST(Vocabulary, ConstructorValidates) {
  EXPECT_THROW(Vocabulary({"b", "a"}, {1, 1}, 2), FormatError);
  EXPECT_THROW(Vocabulary({"a"}, {3}, 2), FormatError);
  EXPECT_THROW(Vocabulary({"a"}, {0}, 2), FormatError);
  EXPECT_THROW(Vocabulary({"a", "b"}, {1}, 2), FormatError);
}

TEST(Transform, SingleKnownTermIsUnit) {
  auto v = letters_vectorizer();
  const Strings sentences{"a b", "a c"};
  v.fit(sentences);
  const auto x = v.transform("c c c");
  ASSERT_EQ(x.size(), 1u);
  EXPECT_EQ(x.entries()[0].index, *v.vocabulary().index_of("c"));
  EXPECT_EQ(x.entries()[0].value, 1.0);
}

TEST(Transform, HandComputedWeights) {
  auto v = letters_vectorizer();
  const Strings sentences{"a b", "a c"};
  v.fit(sentences);
  const auto& vocab = v.vocabulary();
  // "a a b" has features a, a, b, "a a", "a b", "a a b"; "a a" and the
  // trigram are unknown.
  const auto x = v.transform("a a b");
  const double wa = 2.0 * 1.0;
  const double wb = 1.0 * (std::log(1.5) + 1.0);
  const double wab = 1.0 * (std::log(1.5) + 1.0);
  const double norm = std::sqrt(wa * wa + wb * wb + wab * wab);
  ASSERT_EQ(x.size(), 3u);
  EXPECT_NEAR(x.at(*vocab.index_of("a")), wa / norm, 1e-15);
  EXPECT_NEAR(x.at(*vocab.index_of("b")), wb / norm, 1e-15);
  EXPECT_NEAR(x.at(*vocab.index_of("a b")), wab / norm, 1e-15);
}

TEST(Transform, OutOfVocabularyIsEmpty) {
  auto v = letters_vectorizer();
  const Strings sentences{"a b", "a c"};
  v.fit(sentences);
  EXPECT_TRUE(v.transform("zz yy").empty());
  EXPECT_TRUE(v.transform("").empty());
}

TEST(SparseVector, NormalizesConstructionAndAblation) {
  SparseVector v({{5, 1.0}, {2, 2.0}, {5, 1.0}, {7, 0.0}});
  EXPECT_EQ(v.entries(), (std::vector<SparseVector::Entry>{{2, 2.0}, {5, 2.0}}));
  const auto w = v.without(2);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w.at(5), 1.0);
  EXPECT_TRUE(w.without(5).empty());
  EXPECT_EQ(squared_distance(SparseVector({{0, 1.0}}), SparseVector({{1, 1.0}})), 2.0);
}

class VectorizerProperties : public ::testing::Test {
 protected:
  void SetUp() override {
    testing::CorpusSpec spec;
    spec.n_articles = 40;
    corpus_ = std::make_unique<testing::SyntheticCorpus>(spec);
    for (const auto& s : corpus_->dataset().sentences) sentences_.push_back(s.text);
  }
  std::unique_ptr<testing::SyntheticCorpus> corpus_;
  Strings sentences_;
};

TEST_F(VectorizerProperties, FitIsDeterministic) {
  TfidfVectorizer a(Analyzer({}, Stopwords::english()));
  TfidfVectorizer b(Analyzer({}, Stopwords::english()));
  a.fit(sentences_);
  b.fit(sentences_);
  EXPECT_EQ(a.vocabulary(), b.vocabulary());
  EXPECT_EQ(a.vocabulary().idf(), b.vocabulary().idf());
}

TEST_F(VectorizerProperties, NonEmptyVectorsHaveUnitNorm) {
  TfidfVectorizer v(Analyzer({}, Stopwords::english()));
  v.fit(sentences_);
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto x = v.transform(corpus_->sentence(seed % 2, seed));
    if (!x.empty()) {
      EXPECT_NEAR(x.norm(), 1.0, 1e-9);
    }
  }
}

TEST_F(VectorizerProperties, AddingSentenceNeverLowersDocumentFrequency) {
  TfidfVectorizer base(Analyzer({}, Stopwords::english()));
  base.fit(sentences_);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Strings more = sentences_;
    const std::string added = corpus_->sentence(seed % 2, 1000 + seed);
    more.push_back(added);
    TfidfVectorizer grown(Analyzer({}, Stopwords::english()));
    grown.fit(more);
    for (const auto& term : base.analyzer().features(added)) {
      const auto before = base.vocabulary().index_of(term);
      const auto after = grown.vocabulary().index_of(term);
      ASSERT_TRUE(after.has_value());
      if (!before) continue;
      EXPECT_GE(grown.vocabulary().document_frequency()[*after],
                base.vocabulary().document_frequency()[*before]);
      EXPECT_LE(grown.vocabulary().idf()[*after], base.vocabulary().idf()[*before]);
    }
  }
}

TEST_F(VectorizerProperties, FeatureSetIsNgramsOfTokensInVocabulary) {
  TfidfVectorizer v(Analyzer({}, Stopwords::english()));
  v.fit(sentences_);
  const auto& vocab = v.vocabulary();
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::string s = corpus_->sentence(seed % 2, 5000 + seed) + " unseenword";
    const auto tokens = tokenize(s, Stopwords::english());
    std::set<std::uint32_t> expected;
    for (const auto& g : ngrams(tokens, 1, 3))
      if (auto i = vocab.index_of(g)) expected.insert(*i);
    std::set<std::uint32_t> actual;
    const SparseVector x = v.transform(s);
    for (const auto& e : x.entries()) actual.insert(e.index);
    EXPECT_EQ(actual, expected);
  }
}

}  // namespace
}  // namespace slantsum
