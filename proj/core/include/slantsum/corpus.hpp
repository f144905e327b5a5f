#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace slantsum {

struct Article {
  std::string article_id;
  std::optional<std::string> source_label;
  std::string title;
  std::string body;  // plain text, no markup

  bool operator==(const Article&) const = default;
};

// One sentence of one article; the classification sample unit.
struct LabeledSentence {
  std::string article_id;
  std::size_t position = 0;
  std::string text;
  std::string label;

  bool operator==(const LabeledSentence&) const = default;
};

// Binary labeled dataset. labels[0] is class index 0 everywhere downstream.
struct Dataset {
  std::array<std::string, 2> labels;
  std::vector<LabeledSentence> sentences;

  // Index of `label` in `labels`; throws ConfigError when unknown.
  std::size_t class_index(std::string_view label) const;
  std::array<std::size_t, 2> class_counts() const;

  bool operator==(const Dataset&) const = default;
};

struct BuildResult {
  Dataset dataset;
  std::size_t skipped_articles = 0;  // articles that yielded no sentence
};

// Visible text of an HTML (or plain text) document: script/style/noscript
// content dropped, tags replaced by a space, &amp; &lt; &gt; &quot; &nbsp;
// decoded, whitespace collapsed and trimmed.
std::string strip_markup(std::string_view raw);

// Collapses runs of ASCII whitespace to one space and trims both ends.
std::string normalize_whitespace(std::string_view text);

// Contents of the first <title> element, stripped; empty when absent.
std::string extract_title(std::string_view raw);

// Rule-based sentence splitter. A boundary is '.', '!' or '?' (optionally
// followed by closing quotes or brackets) then whitespace then an uppercase
// letter, opening quote or digit. A period after a known abbreviation or a
// single capital letter is not a boundary.
std::vector<std::string> split_sentences(std::string_view body);

// The bundled abbreviation list, without trailing periods.
const std::vector<std::string>& abbreviations();

// Concatenates split_sentences over each article body in input order. The
// label set is `label_order` when given, otherwise the labels in order of
// first appearance. Throws ConfigError unless exactly two labels are present
// and both end up with at least one sentence.
BuildResult build_dataset(const std::vector<Article>& articles,
                          const std::optional<std::array<std::string, 2>>&
                              label_order = std::nullopt);

// Line-delimited records {"article_id","position","text","label"}.
void save_dataset(const Dataset& dataset, const std::filesystem::path& path);

// Labels are taken in order of first appearance unless `expected_labels` is
// given, in which case any other label is an error.
Dataset load_dataset(const std::filesystem::path& path,
                     const std::optional<std::array<std::string, 2>>&
                         expected_labels = std::nullopt);

// Reads one article file. ".html"/".htm" files are stripped of markup and
// take their title from <title>; anything else is read as plain text.
Article read_article(const std::filesystem::path& path,
                     std::optional<std::string> label = std::nullopt);

// Reads `dir/<label>/*` for every class subdirectory. Class directories are
// visited in `label_order` when given, otherwise sorted by name; files are
// sorted by name. article_id is "<label>/<file name>".
std::vector<Article> read_corpus_directory(
    const std::filesystem::path& dir,
    const std::optional<std::array<std::string, 2>>& label_order =
        std::nullopt);

}  // namespace slantsum
