#include "slantsum/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "json.hpp"

#include "slantsum/balance.hpp"
#include "slantsum/error.hpp"
#include "slantsum/io.hpp"
#include "slantsum/rng.hpp"

namespace slantsum {

using nlohmann::json;
using nlohmann::ordered_json;

FittedPipeline::FittedPipeline(TfidfVectorizer vectorizer, ForestModel forest,
                               ClassWordStats class_word_stats,
                               PipelineConfig config)
    : vectorizer_(std::move(vectorizer)),
      forest_(std::move(forest)),
      class_word_stats_(std::move(class_word_stats)),
      config_(std::move(config)) {
  if (forest_.n_features() != vectorizer_.vocabulary().size())
    throw FormatError("forest has " + std::to_string(forest_.n_features()) +
                      " features but vocabulary has " +
                      std::to_string(vectorizer_.vocabulary().size()));
  config_.forest.seed = config_.seed;
}

std::size_t FittedPipeline::class_index(std::string_view name) const {
  for (std::size_t i = 0; i < 2; ++i) {
    if (classes()[i] == name) return i;
  }
  throw ConfigError("unknown class '" + std::string(name) + "'; model has '" +
                    classes()[0] + "' and '" + classes()[1] + "'");
}

bool FittedPipeline::operator==(const FittedPipeline& other) const {
  const auto& a = config_;
  const auto& b = other.config_;
  return a.vectorizer == b.vectorizer &&
         a.stopwords.words() == b.stopwords.words() && a.smote == b.smote &&
         a.smote_k_neighbors == b.smote_k_neighbors && a.forest == b.forest &&
         a.seed == b.seed &&
         vectorizer_.analyzer().config() == other.vectorizer_.analyzer().config() &&
         vectorizer_.vocabulary() == other.vectorizer_.vocabulary() &&
         forest_ == other.forest_ &&
         class_word_stats_ == other.class_word_stats_;
}

FittedPipeline fit_pipeline(const Dataset& dataset, const PipelineConfig& config,
                            FitStats* stats) {
  std::vector<std::string> texts;
  std::vector<std::size_t> labels;
  texts.reserve(dataset.sentences.size());
  labels.reserve(dataset.sentences.size());
  for (const auto& s : dataset.sentences) {
    texts.push_back(s.text);
    labels.push_back(dataset.class_index(s.label));
  }
  if (std::count(labels.begin(), labels.end(), 0) == 0 ||
      std::count(labels.begin(), labels.end(), 1) == 0)
    throw ConfigError("two classes required: both classes need sentences");

  TfidfVectorizer vectorizer(Analyzer(config.vectorizer, config.stopwords));
  vectorizer.fit(texts);

  ClassVectors by_class;
  ClassWordStats word_stats;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    by_class[labels[i]].push_back(vectorizer.transform(texts[i]));
    for (auto& token : vectorizer.analyzer().tokenize(texts[i]))
      ++word_stats[labels[i]][std::move(token)];
  }
  const std::array<std::size_t, 2> raw_sizes{by_class[0].size(),
                                             by_class[1].size()};
  if (config.smote) {
    by_class = balance_classes(std::move(by_class),
                               SmoteConfig{config.smote_k_neighbors, config.seed});
  }

  std::vector<SparseVector> x;
  std::vector<std::size_t> y;
  x.reserve(by_class[0].size() + by_class[1].size());
  for (std::size_t c = 0; c < 2; ++c) {
    for (auto& v : by_class[c]) {
      x.push_back(std::move(v));
      y.push_back(c);
    }
  }
  ForestConfig forest_config = config.forest;
  forest_config.seed = config.seed;
  ForestModel forest =
      ForestModel::train(x, y, vectorizer.vocabulary().size(), dataset.labels,
                         forest_config);

  if (stats) {
    stats->raw_class_sizes = raw_sizes;
    stats->balanced_class_sizes = {by_class[0].size(), by_class[1].size()};
    stats->vocabulary_size = vectorizer.vocabulary().size();
  }
  return FittedPipeline(std::move(vectorizer), std::move(forest),
                        std::move(word_stats), config);
}

DatasetSplit stratified_split(const Dataset& dataset, double test_fraction,
                              std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw ConfigError("test fraction must be in (0, 1)");
  std::array<std::vector<std::size_t>, 2> members;
  for (std::size_t i = 0; i < dataset.sentences.size(); ++i)
    members[dataset.class_index(dataset.sentences[i].label)].push_back(i);

  std::vector<char> in_test(dataset.sentences.size(), 0);
  Rng rng(seed);
  for (std::size_t c = 0; c < 2; ++c) {
    auto& m = members[c];
    const auto n_test = static_cast<std::size_t>(
        std::floor(test_fraction * static_cast<double>(m.size()) + 0.5));
    if (n_test == 0 || n_test >= m.size()) {
      throw ConfigError("class '" + dataset.labels[c] + "' has " +
                        std::to_string(m.size()) +
                        " sentences, too few for a train/test split at "
                        "fraction " + std::to_string(test_fraction) +
                        "; use a larger dataset");
    }
    for (std::size_t i = m.size(); i > 1; --i)
      std::swap(m[i - 1], m[rng.uniform_index(i)]);
    for (std::size_t i = 0; i < n_test; ++i) in_test[m[i]] = 1;
  }

  DatasetSplit split;
  split.train.labels = dataset.labels;
  split.test.labels = dataset.labels;
  for (std::size_t i = 0; i < dataset.sentences.size(); ++i)
    (in_test[i] ? split.test : split.train)
        .sentences.push_back(dataset.sentences[i]);
  return split;
}

EvalReport make_report(const std::array<std::string, 2>& classes,
                       std::span<const std::size_t> truth,
                       std::span<const std::size_t> predicted) {
  if (truth.size() != predicted.size())
    throw ConfigError("truth and predictions differ in length");
  EvalReport report;
  report.classes = classes;
  for (std::size_t i = 0; i < truth.size(); ++i)
    ++report.confusion[truth[i]][predicted[i]];
  report.samples = truth.size();
  std::size_t correct = 0;
  for (std::size_t c = 0; c < 2; ++c) {
    const std::size_t tp = report.confusion[c][c];
    const std::size_t actual = report.confusion[c][0] + report.confusion[c][1];
    const std::size_t called = report.confusion[0][c] + report.confusion[1][c];
    auto& r = report.per_class[c];
    r.samples = actual;
    r.precision = called ? static_cast<double>(tp) / static_cast<double>(called) : 0.0;
    r.recall = actual ? static_cast<double>(tp) / static_cast<double>(actual) : 0.0;
    correct += tp;
  }
  report.precision = (report.per_class[0].precision + report.per_class[1].precision) / 2;
  report.recall = (report.per_class[0].recall + report.per_class[1].recall) / 2;
  report.accuracy = report.samples ? static_cast<double>(correct) /
                                         static_cast<double>(report.samples)
                                   : 0.0;
  return report;
}

Evaluation run_evaluation(const Dataset& dataset, const PipelineConfig& config,
                          double test_fraction) {
  DatasetSplit split = stratified_split(dataset, test_fraction, config.seed);
  FittedPipeline pipeline = fit_pipeline(split.train, config);
  std::vector<std::size_t> truth, predicted;
  for (const auto& s : split.test.sentences) {
    truth.push_back(dataset.class_index(s.label));
    predicted.push_back(pipeline.predict(s.text));
  }
  EvalReport report = make_report(dataset.labels, truth, predicted);
  return {std::move(split), std::move(pipeline), std::move(report)};
}

EvalReport evaluate(const Dataset& dataset, const PipelineConfig& config,
                    double test_fraction) {
  return run_evaluation(dataset, config, test_fraction).report;
}

std::string format_report(const EvalReport& report) {
  std::size_t width = 7;
  for (const auto& c : report.classes) width = std::max(width, c.size());
  std::string out;
  char line[512];
  std::snprintf(line, sizeof line, "%-*s  %7s  %9s  %6s  %8s\n",
                static_cast<int>(width), "Class", "Samples", "Precision",
                "Recall", "Accuracy");
  out += line;
  for (std::size_t c = 0; c < 2; ++c) {
    std::snprintf(line, sizeof line, "%-*s  %7zu  %9.2f  %6.2f  %8s\n",
                  static_cast<int>(width), report.classes[c].c_str(),
                  report.per_class[c].samples, report.per_class[c].precision,
                  report.per_class[c].recall, "---");
    out += line;
  }
  std::snprintf(line, sizeof line, "%-*s  %7zu  %9.2f  %6.2f  %8.2f\n",
                static_cast<int>(width), "Overall", report.samples,
                report.precision, report.recall, report.accuracy);
  out += line;
  return out;
}

// ---------------------------------------------------------------------------
// Model archive

namespace {

ordered_json tree_to_json(const DecisionTree& tree) {
  ordered_json nodes = ordered_json::array();
  for (const auto& n : tree.nodes()) {
    if (n.leaf) {
      nodes.push_back({"L", n.class_counts[0], n.class_counts[1]});
    } else {
      nodes.push_back({"I", n.feature, n.threshold});
    }
  }
  return nodes;
}

DecisionTree tree_from_json(const json& nodes) {
  if (!nodes.is_array()) throw FormatError("tree is not an array");
  std::vector<TreeNode> out(nodes.size());
  // Preorder: a stack of internal nodes still waiting for their right child.
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    if (!n.is_array() || n.size() != 3 || !n[0].is_string())
      throw FormatError("node " + std::to_string(i) + " is malformed");
    if (i > 0) {
      if (!out[i - 1].leaf) {
        out[i - 1].left = static_cast<std::uint32_t>(i);
      } else {
        if (pending.empty())
          throw FormatError("node " + std::to_string(i) + " has no parent");
        out[pending.back()].right = static_cast<std::uint32_t>(i);
        pending.pop_back();
      }
    }
    const std::string tag = n[0].get<std::string>();
    if (tag == "L") {
      out[i].leaf = true;
      out[i].class_counts = {n[1].get<std::uint64_t>(), n[2].get<std::uint64_t>()};
    } else if (tag == "I") {
      out[i].leaf = false;
      out[i].feature = n[1].get<std::uint32_t>();
      out[i].threshold = n[2].get<double>();
      pending.push_back(i);
    } else {
      throw FormatError("node " + std::to_string(i) + " has unknown tag '" +
                        tag + "'");
    }
  }
  if (!pending.empty() || (!out.empty() && !out.back().leaf))
    throw FormatError("tree ends before all children are defined");
  return DecisionTree(std::move(out));
}

// Name of the top-level field being read when a parse error occurred.
class SectionLocator : public nlohmann::json_sax<json> {
 public:
  std::string section;

  bool null() override { return true; }
  bool boolean(bool) override { return true; }
  bool number_integer(number_integer_t) override { return true; }
  bool number_unsigned(number_unsigned_t) override { return true; }
  bool number_float(number_float_t, const string_t&) override { return true; }
  bool string(string_t&) override { return true; }
  bool binary(binary_t&) override { return true; }
  bool start_object(std::size_t) override { ++depth_; return true; }
  bool end_object() override { --depth_; return true; }
  bool start_array(std::size_t) override { ++depth_; return true; }
  bool end_array() override { --depth_; return true; }
  bool key(string_t& k) override {
    if (depth_ == 1) section = k;
    return true;
  }
  bool parse_error(std::size_t, const std::string&,
                   const nlohmann::detail::exception&) override {
    return false;
  }

 private:
  int depth_ = 0;
};

template <typename F>
auto read_section(const json& doc, const char* name, F&& read) {
  if (!doc.contains(name))
    throw FormatError(std::string("model archive: missing section '") + name + "'");
  try {
    return read(doc.at(name));
  } catch (const json::exception& e) {
    throw FormatError(std::string("model archive: corrupted section '") + name +
                      "': " + e.what());
  } catch (const Error& e) {
    throw FormatError(std::string("model archive: corrupted section '") + name +
                      "': " + e.what());
  }
}

}  // namespace

std::string serialize_pipeline(const FittedPipeline& p) {
  const auto& cfg = p.config();
  ordered_json doc;
  doc["format_version"] = kModelFormatVersion;
  doc["classes"] = p.classes();
  ordered_json vec;
  vec["ngram_min"] = cfg.vectorizer.ngram_min;
  vec["ngram_max"] = cfg.vectorizer.ngram_max;
  vec["min_token_len"] = cfg.vectorizer.min_token_len;
  vec["keep_stopwords_in_ngrams"] = cfg.vectorizer.keep_stopwords_in_ngrams;
  vec["stopwords"] = cfg.stopwords.words();
  ordered_json smote;
  smote["enabled"] = cfg.smote;
  smote["k_neighbors"] = cfg.smote_k_neighbors;
  ordered_json forest;
  forest["n_trees"] = cfg.forest.n_trees;
  forest["max_features"] = std::string(to_string(cfg.forest.max_features));
  forest["min_leaf"] = cfg.forest.min_leaf;
  forest["bootstrap"] = cfg.forest.bootstrap;
  doc["config"] = {{"vectorizer", vec}, {"smote", smote}, {"forest", forest}};
  doc["seed"] = cfg.seed;

  const auto& vocab = p.vectorizer().vocabulary();
  doc["vocabulary"] = {{"terms", vocab.terms()},
                       {"df", vocab.document_frequency()},
                       {"n_documents", vocab.n_documents()}};
  ordered_json trees = ordered_json::array();
  for (const auto& tree : p.forest().trees()) trees.push_back(tree_to_json(tree));
  doc["forest"] = {{"n_features", p.forest().n_features()},
                   {"trees", std::move(trees)}};
  ordered_json stats;
  for (std::size_t c = 0; c < 2; ++c) {
    ordered_json counts = ordered_json::object();
    for (const auto& [word, n] : p.class_word_stats()[c]) counts[word] = n;
    stats[p.classes()[c]] = std::move(counts);
  }
  doc["class_word_stats"] = std::move(stats);
  return doc.dump() + "\n";
}

FittedPipeline parse_pipeline(std::string_view archive) {
  json doc = json::parse(archive, nullptr, false);
  if (doc.is_discarded()) {
    SectionLocator locator;
    json::sax_parse(archive, &locator);
    throw FormatError(
        "model archive is truncated or malformed" +
        (locator.section.empty() ? std::string()
                                 : " in section '" + locator.section + "'"));
  }
  if (!doc.is_object() || !doc.contains("format_version"))
    throw FormatError("model archive: missing format_version");
  const auto& version = doc["format_version"];
  if (!version.is_number_integer() || version.get<long long>() != kModelFormatVersion) {
    throw FormatError("model archive version mismatch: file has " +
                      version.dump() + ", expected " +
                      std::to_string(kModelFormatVersion));
  }

  auto classes = read_section(doc, "classes", [](const json& j) {
    auto c = j.get<std::array<std::string, 2>>();
    if (c[0] == c[1]) throw FormatError("class names must differ");
    return c;
  });
  auto seed = read_section(doc, "seed",
                           [](const json& j) { return j.get<std::uint64_t>(); });
  PipelineConfig config = read_section(doc, "config", [&](const json& j) {
    PipelineConfig c;
    const auto& v = j.at("vectorizer");
    c.vectorizer.ngram_min = v.at("ngram_min").get<std::size_t>();
    c.vectorizer.ngram_max = v.at("ngram_max").get<std::size_t>();
    c.vectorizer.min_token_len = v.at("min_token_len").get<std::size_t>();
    c.vectorizer.keep_stopwords_in_ngrams =
        v.at("keep_stopwords_in_ngrams").get<bool>();
    c.stopwords = Stopwords(v.at("stopwords").get<std::vector<std::string>>());
    const auto& s = j.at("smote");
    c.smote = s.at("enabled").get<bool>();
    c.smote_k_neighbors = s.at("k_neighbors").get<std::size_t>();
    const auto& f = j.at("forest");
    c.forest.n_trees = f.at("n_trees").get<std::size_t>();
    c.forest.max_features =
        max_features_from_string(f.at("max_features").get<std::string>());
    c.forest.min_leaf = f.at("min_leaf").get<std::size_t>();
    c.forest.bootstrap = f.at("bootstrap").get<bool>();
    c.seed = seed;
    c.forest.seed = seed;
    return c;
  });
  Vocabulary vocabulary = read_section(doc, "vocabulary", [](const json& j) {
    return Vocabulary(j.at("terms").get<std::vector<std::string>>(),
                      j.at("df").get<std::vector<std::uint64_t>>(),
                      j.at("n_documents").get<std::uint64_t>());
  });
  ForestModel forest = read_section(doc, "forest", [&](const json& j) {
    std::vector<DecisionTree> trees;
    const auto& arr = j.at("trees");
    if (!arr.is_array()) throw FormatError("trees is not an array");
    for (std::size_t t = 0; t < arr.size(); ++t) {
      try {
        trees.push_back(tree_from_json(arr[t]));
      } catch (const Error& e) {
        throw FormatError("tree " + std::to_string(t) + ": " + e.what());
      }
    }
    return ForestModel(std::move(trees), j.at("n_features").get<std::size_t>(),
                       classes, config.forest);
  });
  ClassWordStats stats = read_section(doc, "class_word_stats", [&](const json& j) {
    ClassWordStats s;
    if (!j.is_object() || j.size() != 2)
      throw FormatError("expected one entry per class");
    for (std::size_t c = 0; c < 2; ++c) {
      for (const auto& [word, n] : j.at(classes[c]).items())
        s[c][word] = n.get<std::uint64_t>();
    }
    return s;
  });

  Analyzer analyzer(config.vectorizer, config.stopwords);
  return FittedPipeline(TfidfVectorizer(std::move(analyzer), std::move(vocabulary)),
                        std::move(forest), std::move(stats), std::move(config));
}

void save_pipeline(const FittedPipeline& pipeline,
                   const std::filesystem::path& path) {
  write_file_atomic(path, serialize_pipeline(pipeline));
}

FittedPipeline load_pipeline(const std::filesystem::path& path) {
  try {
    return parse_pipeline(read_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace slantsum
