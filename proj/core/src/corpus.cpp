#include "slantsum/corpus.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

#include "embedded_data.hpp"
#include "slantsum/error.hpp"
#include "slantsum/io.hpp"
#include "text_util.hpp"

namespace slantsum {

using detail::is_alpha;
using detail::is_digit;
using detail::is_space;
using detail::is_upper;
using detail::to_lower;

namespace {

bool starts_with_ci(std::string_view text, std::size_t pos,
                    std::string_view prefix) {
  if (text.size() - pos < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (to_lower(text[pos + i]) != prefix[i]) return false;
  }
  return true;
}

// Position of the '>' closing the tag opened at `open`, honoring quoted
// attribute values. Falls back to the first '>' when quotes are unbalanced.
std::size_t find_tag_end(std::string_view raw, std::size_t open) {
  char quote = 0;
  for (std::size_t i = open + 1; i < raw.size(); ++i) {
    char c = raw[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      if (i > 0 && raw[i - 1] == '=') quote = c;
    } else if (c == '>') {
      return i;
    }
  }
  return raw.find('>', open + 1);
}

std::string tag_name(std::string_view raw, std::size_t open) {
  std::size_t i = open + 1;
  if (i < raw.size() && raw[i] == '/') ++i;
  std::string name;
  while (i < raw.size() && (is_alpha(raw[i]) || is_digit(raw[i]))) {
    name.push_back(to_lower(raw[i]));
    ++i;
  }
  return name;
}

struct Entity {
  std::string_view encoded;
  char decoded;
};

constexpr Entity kEntities[] = {
    {"&amp;", '&'}, {"&lt;", '<'},   {"&gt;", '>'},
    {"&quot;", '"'}, {"&nbsp;", ' '},
};

const std::unordered_set<std::string>& abbreviation_set() {
  static const std::unordered_set<std::string> set(abbreviations().begin(),
                                                   abbreviations().end());
  return set;
}

// UTF-8 sequences for curly quotes.
constexpr std::string_view kLeftDouble = "\xE2\x80\x9C";
constexpr std::string_view kRightDouble = "\xE2\x80\x9D";
constexpr std::string_view kLeftSingle = "\xE2\x80\x98";
constexpr std::string_view kRightSingle = "\xE2\x80\x99";

bool has_at(std::string_view text, std::size_t pos, std::string_view what) {
  return text.substr(pos, what.size()) == what;
}

// Length of a closing quote/bracket at `pos`, 0 if none.
std::size_t closer_length(std::string_view text, std::size_t pos) {
  char c = text[pos];
  if (c == '"' || c == '\'' || c == ')' || c == ']') return 1;
  if (has_at(text, pos, kRightDouble) || has_at(text, pos, kRightSingle))
    return 3;
  return 0;
}

bool opens_sentence(std::string_view text, std::size_t pos) {
  if (pos >= text.size()) return false;
  char c = text[pos];
  if (is_upper(c) || is_digit(c) || c == '"' || c == '\'') return true;
  return has_at(text, pos, kLeftDouble) || has_at(text, pos, kLeftSingle);
}

// True when the '.' at `dot` ends a known abbreviation or an initial.
bool ends_abbreviation(std::string_view text, std::size_t sentence_start,
                       std::size_t dot) {
  std::size_t begin = dot;
  while (begin > sentence_start && !is_space(text[begin - 1])) --begin;
  std::string_view token = text.substr(begin, dot - begin);
  while (!token.empty() &&
         (token.front() == '(' || token.front() == '[' ||
          token.front() == '"' || token.front() == '\'')) {
    token.remove_prefix(1);
  }
  if (token.starts_with(kLeftDouble) || token.starts_with(kLeftSingle))
    token.remove_prefix(3);
  if (token.size() == 1 && is_upper(token[0])) return true;
  return abbreviation_set().contains(std::string(token));
}

std::string trimmed(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return std::string(s);
}

}  // namespace

std::size_t Dataset::class_index(std::string_view label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return i;
  }
  throw ConfigError("unknown class '" + std::string(label) + "'; known: '" +
                    labels[0] + "', '" + labels[1] + "'");
}

std::array<std::size_t, 2> Dataset::class_counts() const {
  std::array<std::size_t, 2> counts{0, 0};
  for (const auto& s : sentences) ++counts[class_index(s.label)];
  return counts;
}

std::string normalize_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (is_space(c)) {
      pending_space = !out.empty();
    } else {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.push_back(c);
    }
  }
  return out;
}

std::string strip_markup(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  std::size_t i = 0;
  while (i < raw.size()) {
    char c = raw[i];
    if (c == '<' && raw.substr(i, 4) == "<!--") {
      std::size_t end = raw.find("-->", i + 4);
      i = end == std::string_view::npos ? raw.size() : end + 3;
      out.push_back(' ');
      continue;
    }
    if (c == '<' && i + 1 < raw.size() &&
        (is_alpha(raw[i + 1]) || raw[i + 1] == '/' || raw[i + 1] == '!' ||
         raw[i + 1] == '?')) {
      std::size_t close = find_tag_end(raw, i);
      if (close != std::string_view::npos) {
        std::string name = tag_name(raw, i);
        bool closing = raw[i + 1] == '/';
        bool self_closing = raw[close - 1] == '/';
        i = close + 1;
        if (!closing && !self_closing &&
            (name == "script" || name == "style" || name == "noscript")) {
          // Skip to the matching close tag; unterminated means drop the rest.
          std::size_t j = i;
          std::string end_tag = "</" + name;
          while (j < raw.size() && !starts_with_ci(raw, j, end_tag)) ++j;
          if (j >= raw.size()) {
            i = raw.size();
          } else {
            std::size_t end = raw.find('>', j);
            i = end == std::string_view::npos ? raw.size() : end + 1;
          }
        }
        out.push_back(' ');
        continue;
      }
    }
    if (c == '&') {
      bool decoded = false;
      for (const auto& e : kEntities) {
        if (raw.substr(i, e.encoded.size()) == e.encoded) {
          out.push_back(e.decoded);
          i += e.encoded.size();
          decoded = true;
          break;
        }
      }
      if (decoded) continue;
    }
    out.push_back(c);
    ++i;
  }
  return normalize_whitespace(out);
}

std::string extract_title(std::string_view raw) {
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] != '<' || !starts_with_ci(raw, i, "<title")) continue;
    std::size_t open_end = raw.find('>', i);
    if (open_end == std::string_view::npos) return {};
    std::size_t j = open_end + 1;
    while (j < raw.size() && !starts_with_ci(raw, j, "</title")) ++j;
    return strip_markup(raw.substr(open_end + 1, j - open_end - 1));
  }
  return {};
}

const std::vector<std::string>& abbreviations() {
  static const std::vector<std::string> list =
      detail::nonempty_lines(detail::embedded_abbreviations());
  return list;
}

std::vector<std::string> split_sentences(std::string_view body) {
  const std::string text = normalize_whitespace(body);
  std::vector<std::string> sentences;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c != '.' && c != '!' && c != '?') {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    // A run like "?!" or "..." is handled at its last terminator.
    if (j < text.size() && (text[j] == '.' || text[j] == '!' || text[j] == '?')) {
      i = j;
      continue;
    }
    while (j < text.size()) {
      std::size_t n = closer_length(text, j);
      if (n == 0) break;
      j += n;
    }
    bool boundary = j < text.size() && text[j] == ' ' &&
                    opens_sentence(text, j + 1);
    if (boundary && c == '.' && ends_abbreviation(text, start, i))
      boundary = false;
    if (boundary) {
      sentences.push_back(text.substr(start, j - start));
      start = j + 1;
      i = start;
    } else {
      i = j;
    }
  }
  if (start < text.size()) sentences.push_back(text.substr(start));
  return sentences;
}

BuildResult build_dataset(
    const std::vector<Article>& articles,
    const std::optional<std::array<std::string, 2>>& label_order) {
  std::vector<std::string> seen;
  for (const auto& article : articles) {
    if (!article.source_label) {
      throw ConfigError("article '" + article.article_id +
                        "' has no source label");
    }
    if (std::find(seen.begin(), seen.end(), *article.source_label) ==
        seen.end()) {
      seen.push_back(*article.source_label);
    }
  }
  if (seen.size() != 2) {
    throw ConfigError("two classes required, found " +
                      std::to_string(seen.size()));
  }

  BuildResult result;
  if (label_order) {
    if ((*label_order)[0] == (*label_order)[1])
      throw ConfigError("two classes required: label override repeats '" +
                        (*label_order)[0] + "'");
    for (const auto& label : seen) {
      if (label != (*label_order)[0] && label != (*label_order)[1])
        throw ConfigError("label '" + label + "' is not in the label override");
    }
    result.dataset.labels = *label_order;
  } else {
    result.dataset.labels = {seen[0], seen[1]};
  }

  std::set<std::string> ids;
  for (const auto& article : articles) {
    if (article.article_id.empty())
      throw ConfigError("article with empty article_id");
    if (!ids.insert(article.article_id).second)
      throw ConfigError("duplicate article_id '" + article.article_id + "'");
    auto sentences = split_sentences(article.body);
    if (sentences.empty()) {
      ++result.skipped_articles;
      continue;
    }
    for (std::size_t pos = 0; pos < sentences.size(); ++pos) {
      result.dataset.sentences.push_back({article.article_id, pos,
                                          std::move(sentences[pos]),
                                          *article.source_label});
    }
  }
  auto counts = result.dataset.class_counts();
  for (std::size_t c = 0; c < 2; ++c) {
    if (counts[c] == 0) {
      throw ConfigError("two classes required: class '" +
                        result.dataset.labels[c] + "' has no sentences");
    }
  }
  return result;
}

void save_dataset(const Dataset& dataset, const std::filesystem::path& path) {
  std::string out;
  for (const auto& s : dataset.sentences) {
    dataset.class_index(s.label);
    nlohmann::ordered_json record;
    record["article_id"] = s.article_id;
    record["position"] = s.position;
    record["text"] = s.text;
    record["label"] = s.label;
    out += record.dump();
    out.push_back('\n');
  }
  write_file_atomic(path, out);
}

Dataset load_dataset(
    const std::filesystem::path& path,
    const std::optional<std::array<std::string, 2>>& expected_labels) {
  const std::string content = read_file(path);
  Dataset dataset;
  std::vector<std::string> labels;
  if (expected_labels) labels = {(*expected_labels)[0], (*expected_labels)[1]};
  std::set<std::string> finished_articles;
  std::string current_article;
  std::size_t next_position = 0;

  std::istringstream in(content);
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    return FormatError(path.string() + ":" + std::to_string(line_no) + ": " +
                       what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw fail(std::string("malformed record: ") + e.what());
    }
    if (!record.is_object()) throw fail("record is not an object");
    for (const char* key : {"article_id", "position", "text", "label"}) {
      if (!record.contains(key))
        throw fail(std::string("missing field \"") + key + "\"");
    }
    if (record.size() != 4) throw fail("unexpected field in record");
    if (!record["article_id"].is_string() || !record["text"].is_string() ||
        !record["label"].is_string()) {
      throw fail("article_id, text and label must be strings");
    }
    if (!record["position"].is_number_unsigned())
      throw fail("position must be a non-negative integer");

    LabeledSentence s;
    s.article_id = record["article_id"].get<std::string>();
    s.position = record["position"].get<std::size_t>();
    s.text = record["text"].get<std::string>();
    s.label = record["label"].get<std::string>();
    if (s.article_id.empty()) throw fail("empty article_id");
    if (trimmed(s.text).empty()) throw fail("empty text");

    if (std::find(labels.begin(), labels.end(), s.label) == labels.end()) {
      if (labels.size() == 2) throw fail("unknown label '" + s.label + "'");
      labels.push_back(s.label);
    }
    if (s.article_id != current_article) {
      if (!current_article.empty()) finished_articles.insert(current_article);
      if (finished_articles.contains(s.article_id))
        throw fail("records of article '" + s.article_id +
                   "' are not contiguous");
      current_article = s.article_id;
      next_position = 0;
    }
    if (s.position != next_position) {
      throw fail("expected position " + std::to_string(next_position) +
                 ", got " + std::to_string(s.position));
    }
    ++next_position;
    dataset.sentences.push_back(std::move(s));
  }
  if (labels.size() != 2) {
    throw ConfigError("two classes required, dataset '" + path.string() +
                      "' has " + std::to_string(labels.size()));
  }
  dataset.labels = {labels[0], labels[1]};
  auto counts = dataset.class_counts();
  for (std::size_t c = 0; c < 2; ++c) {
    if (counts[c] == 0)
      throw ConfigError("two classes required: class '" + dataset.labels[c] +
                        "' has no sentences");
  }
  return dataset;
}

Article read_article(const std::filesystem::path& path,
                     std::optional<std::string> label) {
  const std::string raw = read_file(path);
  Article article;
  article.article_id = path.filename().string();
  article.source_label = std::move(label);
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), to_lower);
  if (ext == ".html" || ext == ".htm") {
    article.title = extract_title(raw);
    // Prefer the <body> element so head content does not leak into the text.
    std::string_view view = raw;
    std::string lower(raw.size(), ' ');
    std::transform(raw.begin(), raw.end(), lower.begin(), to_lower);
    std::size_t body_open = lower.find("<body");
    if (body_open != std::string::npos) {
      std::size_t body_end = lower.find("</body", body_open);
      view = view.substr(body_open, body_end == std::string::npos
                                        ? std::string_view::npos
                                        : body_end - body_open);
    }
    article.body = strip_markup(view);
  } else {
    article.body = normalize_whitespace(raw);
  }
  return article;
}

std::vector<Article> read_corpus_directory(
    const std::filesystem::path& dir,
    const std::optional<std::array<std::string, 2>>& label_order) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec))
    throw IoError("'" + dir.string() + "' is not a directory");

  std::vector<std::string> class_dirs;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::string name = entry.path().filename().string();
    if (entry.is_directory() && !name.starts_with(".")) class_dirs.push_back(name);
  }
  std::sort(class_dirs.begin(), class_dirs.end());
  if (class_dirs.size() != 2) {
    throw ConfigError("two classes required: '" + dir.string() + "' has " +
                      std::to_string(class_dirs.size()) +
                      " class subdirectories");
  }
  if (label_order) {
    std::vector<std::string> wanted{(*label_order)[0], (*label_order)[1]};
    std::vector<std::string> sorted_wanted = wanted;
    std::sort(sorted_wanted.begin(), sorted_wanted.end());
    if (sorted_wanted != class_dirs) {
      throw ConfigError("label override '" + wanted[0] + "," + wanted[1] +
                        "' does not match subdirectories '" + class_dirs[0] +
                        "', '" + class_dirs[1] + "'");
    }
    class_dirs = wanted;
  }

  std::vector<Article> articles;
  for (const auto& label : class_dirs) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir / label)) {
      if (entry.is_regular_file() &&
          !entry.path().filename().string().starts_with(".")) {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      Article article = read_article(file, label);
      article.article_id = label + "/" + file.filename().string();
      articles.push_back(std::move(article));
    }
  }
  return articles;
}

}  // namespace slantsum
