#include "cli.hpp"

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "slantsum/analysis.hpp"
#include "slantsum/config.hpp"
#include "slantsum/corpus.hpp"
#include "slantsum/error.hpp"
#include "slantsum/io.hpp"
#include "slantsum/keywords.hpp"
#include "slantsum/pipeline.hpp"
#include "slantsum/summarizer.hpp"

namespace slantsum::cli {

namespace {

struct Options {
  std::string in_dir;
  std::string dataset;
  std::string model;
  std::string article;
  std::string summary_file;
  std::string config_path;
  std::string labels;
  std::string target_class;
  std::string sentence;
  std::optional<std::uint64_t> seed;
  std::optional<double> exponent_x;
  std::optional<std::size_t> max_chars;
  std::optional<std::size_t> limit;
  double test_fraction = 0.10;
  bool no_smote = false;
  bool json = false;
};

Config resolve_config(const Options& o) {
  Config config = o.config_path.empty() ? Config{} : load_config(o.config_path);
  if (o.seed) config.pipeline.seed = *o.seed;
  if (o.no_smote) config.pipeline.smote = false;
  return config;
}

std::optional<std::array<std::string, 2>> parse_labels(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos)
    throw ConfigError("--labels expects exactly two names: A,B");
  std::array<std::string, 2> labels{text.substr(0, comma), text.substr(comma + 1)};
  if (labels[0].empty() || labels[1].empty() || labels[0] == labels[1])
    throw ConfigError("--labels expects two distinct non-empty names");
  return labels;
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

void cmd_ingest(const Options& o, std::ostream& out) {
  const auto labels = parse_labels(o.labels);
  const auto articles = read_corpus_directory(o.in_dir, labels);
  if (articles.empty()) throw ConfigError("no article files under '" + o.in_dir + "'");
  auto built = build_dataset(articles, labels);
  save_dataset(built.dataset, o.dataset);

  const auto& d = built.dataset;
  std::array<std::size_t, 2> n_articles{0, 0};
  std::string last;
  for (const auto& s : d.sentences) {
    if (s.article_id != last) ++n_articles[d.class_index(s.label)];
    last = s.article_id;
  }
  const auto n_sentences = d.class_counts();
  std::size_t width = 5;
  for (const auto& l : d.labels) width = std::max(width, l.size());
  const int w = static_cast<int>(width);
  out << fmt("%-*s  %8s  %9s\n", w, "Class", "Articles", "Sentences");
  for (std::size_t c = 0; c < 2; ++c)
    out << fmt("%-*s  %8zu  %9zu\n", w, d.labels[c].c_str(), n_articles[c],
               n_sentences[c]);
  out << fmt("%-*s  %8zu  %9zu\n", w, "Total", n_articles[0] + n_articles[1],
             n_sentences[0] + n_sentences[1]);
  if (built.skipped_articles > 0)
    out << "skipped " << built.skipped_articles << " article(s) with no sentences\n";
}

void cmd_train(const Options& o, std::ostream& out) {
  const Config config = resolve_config(o);
  const Dataset dataset = load_dataset(o.dataset);
  FitStats stats;
  const auto pipeline = fit_pipeline(dataset, config.pipeline, &stats);
  save_pipeline(pipeline, o.model);
  out << "vocabulary size: " << stats.vocabulary_size << "\n";
  for (std::size_t c = 0; c < 2; ++c) {
    out << "class " << dataset.labels[c] << ": " << stats.raw_class_sizes[c]
        << " sentences, " << stats.balanced_class_sizes[c]
        << " after balancing\n";
  }
}

void cmd_eval(const Options& o, std::ostream& out) {
  const Config config = resolve_config(o);
  const Dataset dataset = load_dataset(o.dataset);
  out << format_report(evaluate(dataset, config.pipeline, o.test_fraction));
}

void cmd_summarize(const Options& o, std::ostream& out) {
  Config config = resolve_config(o);
  const auto pipeline = load_pipeline(o.model);
  const Article article = read_article(o.article);
  SummaryConfig sc = config.summary;
  sc.target_class = o.target_class;
  if (o.exponent_x) sc.exponent_x = *o.exponent_x;
  if (o.max_chars) sc.max_chars = *o.max_chars;
  if (sc.max_chars < sc.min_chars) sc.min_chars = sc.max_chars;
  const Summary summary = summarize(article, pipeline, sc);
  if (o.json) {
    out << summary_to_json(summary);
  } else {
    out << summary.text() << "\n";
  }
}

void cmd_keywords(const Options& o, std::ostream& out) {
  Config config = resolve_config(o);
  const auto pipeline = load_pipeline(o.model);
  const Article article = read_article(o.article);
  if (o.limit) config.keywords.limit = *o.limit;
  const auto keywords = recommend(article, pipeline, o.target_class, config.keywords);
  if (o.json) {
    out << keywords_to_json(keywords);
    return;
  }
  for (const auto& k : keywords) out << k.word << "\t" << fmt("%.4f", k.score) << "\n";
}

void cmd_explain(const Options& o, std::ostream& out) {
  const auto pipeline = load_pipeline(o.model);
  const Explanation e = explain(o.sentence, pipeline, o.target_class);
  if (!o.json) {
    out << format_explanation(e);
    return;
  }
  nlohmann::ordered_json doc;
  doc["sentence"] = e.sentence;
  doc["target_class"] = e.target_class;
  doc["predicted_prob"] = e.predicted_prob;
  doc["prior_prob"] = e.prior_prob;
  doc["contributions"] = nlohmann::ordered_json::array();
  for (const auto& c : e.contributions)
    doc["contributions"].push_back({{"feature", c.feature}, {"weight", c.weight}});
  out << doc.dump(2) << "\n";
}

void cmd_drift(const Options& o, std::ostream& out) {
  const auto pipeline = load_pipeline(o.model);
  const Article article = read_article(o.article);
  const std::string summary_text = read_file(o.summary_file);
  std::string_view trimmed = summary_text;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front())))
    trimmed.remove_prefix(1);

  DriftReport report;
  if (trimmed.starts_with("{")) {
    report = drift_score(article, summary_from_json(summary_text), pipeline,
                         o.target_class);
  } else {
    report = drift_score(split_sentences(article.body), split_sentences(summary_text),
                         pipeline, o.target_class);
  }
  if (o.json) {
    nlohmann::ordered_json doc;
    doc["target_class"] = o.target_class;
    doc["article_mean_prob"] = report.article_mean_prob;
    doc["summary_mean_prob"] = report.summary_mean_prob;
    doc["drift"] = report.drift;
    doc["article_probs"] = report.article_probs;
    doc["summary_probs"] = report.summary_probs;
    out << doc.dump(2) << "\n";
    return;
  }
  out << fmt("article mean P(%s): %.4f (%zu sentences)\n", o.target_class.c_str(),
             report.article_mean_prob, report.article_probs.size());
  out << fmt("summary mean P(%s): %.4f (%zu sentences)\n", o.target_class.c_str(),
             report.summary_mean_prob, report.summary_probs.size());
  out << fmt("drift: %.4f\n", report.drift);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stance-weighted extractive summarization toolkit", "slantsum"};
  app.require_subcommand(1);
  Options o;

  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", o.seed, "Seed for every random choice");
  };
  auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("--config", o.config_path, "JSON configuration file")
        ->check(CLI::ExistingFile);
  };

  auto* ingest = app.add_subcommand("ingest", "Build a labeled sentence dataset");
  ingest->add_option("in_dir", o.in_dir, "Directory with one subdirectory per class")
      ->required();
  ingest->add_option("out_dataset", o.dataset, "Dataset file to write")->required();
  ingest->add_option("--labels", o.labels, "Class order override, e.g. A,B");

  auto* train = app.add_subcommand("train", "Fit and save a pipeline");
  train->add_option("dataset", o.dataset, "Dataset file")->required();
  train->add_option("model_out", o.model, "Model archive to write")->required();
  add_seed(train);
  add_config(train);
  train->add_flag("--no-smote", o.no_smote, "Train without minority oversampling");

  auto* eval = app.add_subcommand("eval", "Held-out evaluation report");
  eval->add_option("dataset", o.dataset, "Dataset file")->required();
  eval->add_option("--test-fraction", o.test_fraction, "Held-out fraction")
      ->check(CLI::Range(0.0, 1.0));
  add_seed(eval);
  add_config(eval);
  eval->add_flag("--no-smote", o.no_smote, "Train without minority oversampling");

  auto* summarize_cmd = app.add_subcommand("summarize", "Class-weighted summary");
  summarize_cmd->add_option("article_file", o.article, "Article (.html or text)")
      ->required();
  summarize_cmd->add_option("model", o.model, "Model archive")->required();
  summarize_cmd->add_option("--class", o.target_class, "Target class")->required();
  summarize_cmd->add_option("--x", o.exponent_x, "Probability exponent");
  summarize_cmd->add_option("--max-chars", o.max_chars, "Character budget");
  summarize_cmd->add_flag("--json", o.json, "Structured output");
  add_config(summarize_cmd);

  auto* keywords = app.add_subcommand("keywords", "Hashtag keyword recommendations");
  keywords->add_option("article_file", o.article, "Article (.html or text)")->required();
  keywords->add_option("model", o.model, "Model archive")->required();
  keywords->add_option("--class", o.target_class, "Target class")->required();
  keywords->add_option("--limit", o.limit, "Maximum number of keywords");
  keywords->add_flag("--json", o.json, "Structured output");
  add_config(keywords);

  auto* explain_cmd = app.add_subcommand("explain", "Per-feature ablation weights");
  explain_cmd->add_option("--sentence", o.sentence, "Sentence to explain")->required();
  explain_cmd->add_option("model", o.model, "Model archive")->required();
  explain_cmd->add_option("--class", o.target_class, "Target class")->required();
  explain_cmd->add_flag("--json", o.json, "Structured output");

  auto* drift = app.add_subcommand("drift", "Summary-vs-article stance drift");
  drift->add_option("article_file", o.article, "Article (.html or text)")->required();
  drift->add_option("summary_file", o.summary_file, "Summary (text or --json output)")
      ->required();
  drift->add_option("model", o.model, "Model archive")->required();
  drift->add_option("--class", o.target_class, "Target class")->required();
  drift->add_flag("--json", o.json, "Structured output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    std::ostringstream buffer;
    if (*ingest) cmd_ingest(o, buffer);
    else if (*train) cmd_train(o, buffer);
    else if (*eval) cmd_eval(o, buffer);
    else if (*summarize_cmd) cmd_summarize(o, buffer);
    else if (*keywords) cmd_keywords(o, buffer);
    else if (*explain_cmd) cmd_explain(o, buffer);
    else if (*drift) cmd_drift(o, buffer);
    out << buffer.str();
  } catch (const std::exception& e) {
    err << "slantsum: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace slantsum::cli
