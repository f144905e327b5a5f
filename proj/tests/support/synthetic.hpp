#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "slantsum/corpus.hpp"

namespace slantsum::testing {

// Pseudo-words that are not stopwords, all distinct.
std::vector<std::string> pseudo_words(std::size_t n, std::uint64_t seed);

struct CorpusSpec {
  std::array<std::string, 2> labels{"left", "right"};
  std::size_t n_articles = 200;
  double class0_share = 0.7;
  std::size_t sentences_min = 8;
  std::size_t sentences_max = 12;
  std::size_t words_min = 10;
  std::size_t words_max = 14;
  std::size_t markers_per_class = 30;
  std::size_t neutral_words = 200;
  std::size_t markers_min = 2;
  std::size_t markers_max = 3;
  // Probability per sentence and class that markers are used at all; a
  // sentence without markers is pure neutral vocabulary.
  std::array<double, 2> marker_rate{1.0, 1.0};
  std::uint64_t seed = 7;
};

class SyntheticCorpus {
 public:
  explicit SyntheticCorpus(CorpusSpec spec);

  const CorpusSpec& spec() const { return spec_; }
  const std::array<std::vector<std::string>, 2>& markers() const { return markers_; }
  const std::vector<std::string>& neutral() const { return neutral_; }

  // Labeled training articles, class 0 first share, ids "<label>-<n>".
  std::vector<Article> articles() const;
  Dataset dataset() const;

  // One sentence of class `cls` (markers included per marker_rate) drawn
  // from the generator seeded by `seed`.
  std::string sentence(std::size_t cls, std::uint64_t seed) const;

  // An unlabeled article alternating sentences of both classes, like a
  // neutral outlet covering both sides.
  Article mixed_article(std::size_t n_sentences, std::uint64_t seed) const;

  // Writes articles to dir/<label>/<id>.txt.
  void write_directory(const std::filesystem::path& dir) const;

 private:
  CorpusSpec spec_;
  std::array<std::vector<std::string>, 2> markers_;
  std::vector<std::string> neutral_;
};

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace slantsum::testing
