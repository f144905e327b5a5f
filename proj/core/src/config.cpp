#include "slantsum/config.hpp"

#include <set>
#include <string>
#include <type_traits>

#include "json.hpp"

#include "slantsum/error.hpp"
#include "slantsum/io.hpp"

namespace slantsum {

namespace {

using nlohmann::json;

void reject_unknown(const json& object, const std::string& where,
                    std::initializer_list<const char*> known) {
  if (!object.is_object())
    throw ConfigError("config: '" + where + "' must be an object");
  std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& [key, value] : object.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError("config: unknown key '" +
                        (where.empty() ? key : where + "." + key) + "'");
    }
  }
}

template <typename T>
void read(const json& object, const char* key, const std::string& where,
          T& out) {
  if (!object.contains(key)) return;
  const auto& value = object.at(key);
  bool ok = true;
  if constexpr (std::is_same_v<T, bool>) {
    ok = value.is_boolean();
  } else if constexpr (std::is_unsigned_v<T>) {
    ok = value.is_number_unsigned();
  } else if constexpr (std::is_floating_point_v<T>) {
    ok = value.is_number();
  }
  if (!ok)
    throw ConfigError("config: '" + (where.empty() ? "" : where + ".") + key +
                      "' has the wrong type");
  try {
    out = object.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config: '" + (where.empty() ? "" : where + ".") + key +
                      "' has the wrong type");
  }
}

}  // namespace

Config parse_config(std::string_view document,
                    const std::filesystem::path& base_dir) {
  json doc = json::parse(document, nullptr, false);
  if (doc.is_discarded()) throw ConfigError("config: not valid JSON");
  reject_unknown(doc, "",
                 {"seed", "vectorizer", "smote", "forest", "summarizer", "keywords"});
  Config config;
  auto& p = config.pipeline;
  read(doc, "seed", "", p.seed);

  if (doc.contains("vectorizer")) {
    const auto& v = doc["vectorizer"];
    reject_unknown(v, "vectorizer",
                   {"ngram_min", "ngram_max", "min_token_len",
                    "keep_stopwords_in_ngrams", "stopwords_path"});
    read(v, "ngram_min", "vectorizer", p.vectorizer.ngram_min);
    read(v, "ngram_max", "vectorizer", p.vectorizer.ngram_max);
    read(v, "min_token_len", "vectorizer", p.vectorizer.min_token_len);
    read(v, "keep_stopwords_in_ngrams", "vectorizer",
         p.vectorizer.keep_stopwords_in_ngrams);
    if (v.contains("stopwords_path") && !v["stopwords_path"].is_null()) {
      std::string path;
      read(v, "stopwords_path", "vectorizer", path);
      config.stopwords_path = base_dir / path;
    }
  }
  if (doc.contains("smote")) {
    const auto& s = doc["smote"];
    reject_unknown(s, "smote", {"enabled", "k_neighbors"});
    read(s, "enabled", "smote", p.smote);
    read(s, "k_neighbors", "smote", p.smote_k_neighbors);
  }
  if (doc.contains("forest")) {
    const auto& f = doc["forest"];
    reject_unknown(f, "forest", {"n_trees", "max_features", "min_leaf", "bootstrap"});
    read(f, "n_trees", "forest", p.forest.n_trees);
    std::string rule(to_string(p.forest.max_features));
    read(f, "max_features", "forest", rule);
    p.forest.max_features = max_features_from_string(rule);
    read(f, "min_leaf", "forest", p.forest.min_leaf);
    read(f, "bootstrap", "forest", p.forest.bootstrap);
  }
  if (doc.contains("summarizer")) {
    const auto& s = doc["summarizer"];
    reject_unknown(s, "summarizer",
                   {"exponent_x", "lwf_a", "lwf_b", "lwf_c", "max_chars", "min_chars"});
    auto& c = config.summary;
    read(s, "exponent_x", "summarizer", c.exponent_x);
    read(s, "lwf_a", "summarizer", c.lwf_a);
    read(s, "lwf_b", "summarizer", c.lwf_b);
    read(s, "lwf_c", "summarizer", c.lwf_c);
    read(s, "max_chars", "summarizer", c.max_chars);
    read(s, "min_chars", "summarizer", c.min_chars);
  }
  if (doc.contains("keywords")) {
    const auto& k = doc["keywords"];
    reject_unknown(k, "keywords", {"limit", "use_feature_importance"});
    read(k, "limit", "keywords", config.keywords.limit);
    read(k, "use_feature_importance", "keywords",
         config.keywords.use_feature_importance);
  }

  if (p.vectorizer.ngram_min < 1 || p.vectorizer.ngram_min > p.vectorizer.ngram_max)
    throw ConfigError("config: need 1 <= vectorizer.ngram_min <= ngram_max");
  if (p.smote_k_neighbors < 1) throw ConfigError("config: smote.k_neighbors must be >= 1");
  if (p.forest.n_trees < 1) throw ConfigError("config: forest.n_trees must be >= 1");
  if (p.forest.min_leaf < 1) throw ConfigError("config: forest.min_leaf must be >= 1");
  if (config.summary.exponent_x < 0)
    throw ConfigError("config: summarizer.exponent_x must be >= 0");
  if (config.summary.max_chars < config.summary.min_chars)
    throw ConfigError("config: summarizer.max_chars must be >= min_chars");

  if (config.stopwords_path) p.stopwords = Stopwords::load(*config.stopwords_path);
  return config;
}

Config load_config(const std::filesystem::path& path) {
  return parse_config(read_file(path), path.parent_path());
}

}  // namespace slantsum
