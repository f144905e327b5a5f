#include "cli.hpp"

#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"
#include "slantsum/io.hpp"
#include "support/synthetic.hpp"

namespace slantsum {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "slantsum");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new testing::TempDir("cli");
    testing::CorpusSpec spec;
    spec.n_articles = 40;
    corpus_ = new testing::SyntheticCorpus(spec);
    corpus_->write_directory(dir_->path() / "corpus");
    std::ofstream(dir_->path() / "small.json") << R"({"forest": {"n_trees": 15}})";
    const Article a = corpus_->mixed_article(12, 3);
    std::ofstream(dir_->path() / "article.txt") << a.body;
  }
  static void TearDownTestSuite() {
    delete corpus_;
    delete dir_;
  }
  static std::string path(const std::string& name) { return (dir_->path() / name).string(); }

  static testing::TempDir* dir_;
  static testing::SyntheticCorpus* corpus_;
};
testing::TempDir* CliTest::dir_ = nullptr;
testing::SyntheticCorpus* CliTest::corpus_ = nullptr;

TEST_F(CliTest, FullWorkflow) {
  auto r = run({"ingest", path("corpus"), path("d.jsonl")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Articles"), std::string::npos);
  EXPECT_NE(r.out.find("left"), std::string::npos);
  EXPECT_NE(r.out.find("Total"), std::string::npos);

  r = run({"train", path("d.jsonl"), path("m.json"), "--config", path("small.json"), "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("vocabulary size"), std::string::npos);
  const std::string first = read_file(path("m.json"));
  r = run({"train", path("d.jsonl"), path("m.json"), "--config", path("small.json"), "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_file(path("m.json")), first);

  r = run({"eval", path("d.jsonl"), "--config", path("small.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Overall"), std::string::npos);

  r = run({"summarize", path("article.txt"), path("m.json"), "--class", "left", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto summary = nlohmann::json::parse(r.out);
  for (const char* k : {"title", "target_class", "char_count", "sentences"})
    EXPECT_TRUE(summary.contains(k)) << k;
  std::ofstream(path("summary.json")) << r.out;

  r = run({"summarize", path("article.txt"), path("m.json"), "--class", "left", "--x", "0",
           "--max-chars", "300"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_FALSE(r.out.empty());

  r = run({"keywords", path("article.txt"), path("m.json"), "--class", "right", "--limit", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::size_t n = 0;
  for (std::string line; std::getline(lines, line);) {
    EXPECT_NE(line.find('\t'), std::string::npos);
    ++n;
  }
  EXPECT_LE(n, 4u);

  r = run({"keywords", path("article.txt"), path("m.json"), "--class", "right", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(nlohmann::json::parse(r.out).is_array());

  r = run({"explain", "--sentence", corpus_->sentence(0, 1), path("m.json"), "--class", "left"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Feature"), std::string::npos);
  r = run({"explain", "--sentence", corpus_->sentence(0, 1), path("m.json"), "--class", "left",
           "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(nlohmann::json::parse(r.out).contains("contributions"));

  r = run({"drift", path("article.txt"), path("summary.json"), path("m.json"), "--class", "left",
           "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_GE(nlohmann::json::parse(r.out)["drift"].get<double>(), 0.0);

  std::ofstream(path("summary.txt")) << read_file(path("article.txt"));
  r = run({"drift", path("article.txt"), path("summary.txt"), path("m.json"), "--class", "left"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("drift: 0.0000"), std::string::npos) << r.out;
}

TEST_F(CliTest, LabelOverrideOrdersClasses) {
  auto r = run({"ingest", path("corpus"), path("rev.jsonl"), "--labels", "right,left"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_LT(r.out.find("right"), r.out.find("left"));
  EXPECT_EQ(load_dataset(path("rev.jsonl")).labels[0], "right");
  r = run({"ingest", path("corpus"), path("x.jsonl"), "--labels", "right"});
  EXPECT_NE(r.code, 0);
}

TEST_F(CliTest, ErrorsAreOneLineAndNonzero) {
  auto r = run({"train", path("missing.jsonl"), path("never.json")});
  EXPECT_NE(r.code, 0);
  EXPECT_EQ(r.err.rfind("slantsum: error: ", 0), 0u) << r.err;
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
  EXPECT_FALSE(std::filesystem::exists(path("never.json")));

  std::ofstream(path("bad.json")) << R"({"forest": {"depth": 3}})";
  r = run({"train", path("d.jsonl"), path("never.json"), "--config", path("bad.json")});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("forest.depth"), std::string::npos) << r.err;

  std::filesystem::create_directories(dir_->path() / "empty");
  r = run({"ingest", path("empty"), path("e.jsonl")});
  EXPECT_NE(r.code, 0);

  std::filesystem::create_directories(dir_->path() / "three" / "a");
  std::filesystem::create_directories(dir_->path() / "three" / "b");
  std::filesystem::create_directories(dir_->path() / "three" / "c");
  r = run({"ingest", path("three"), path("t.jsonl")});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("two classes required"), std::string::npos) << r.err;
  EXPECT_FALSE(std::filesystem::exists(path("t.jsonl")));

  r = run({"bogus"});
  EXPECT_NE(r.code, 0);
}

}  // namespace
}  // namespace slantsum
