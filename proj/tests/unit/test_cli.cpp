#include <sys/wait.h>

#include <cstdio>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "geolex/analytics.hpp"
#include "geolex/choropleth.hpp"
#include "geolex/pipeline.hpp"
#include "test_support.hpp"

namespace geolex {
namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(GEOLEX_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = testing::temp_dir("cli");
    index_ = (dir_ / "mini.idx").string();
    auto r = run("ingest --profiles " + testing::fixture_path("mini/profiles.jsonl").string() +
                 " --posts " + testing::fixture_path("mini/posts.jsonl").string() + " --out " + index_);
    ASSERT_EQ(r.code, 0);
  }
  static void TearDownTestSuite() { std::filesystem::remove_all(dir_); }

  static inline std::filesystem::path dir_;
  static inline std::string index_;
};

TEST_F(Cli, MapCsvMatchesAnalytics) {
  auto r = run("map --index " + index_ + " --word lake --format csv");
  ASSERT_EQ(r.code, 0);
  auto expected = ingest_corpus(testing::fixture_path("mini/profiles.jsonl"),
                                testing::fixture_path("mini/posts.jsonl"));
  EXPECT_EQ(r.out, to_csv(make_choropleth(word_map(expected, "lake"))));

  std::istringstream in(r.out);
  std::string line;
  int rows = -1;
  while (std::getline(in, line)) {
    ++rows;
    if (line.starts_with("TX,")) EXPECT_TRUE(line.starts_with("TX,0.3,"));
    if (line.starts_with("CA,")) EXPECT_TRUE(line.starts_with("CA,0.05,"));
  }
  EXPECT_EQ(rows, 50);
}

TEST_F(Cli, MapJsonAndSvg) {
  auto j = run("map --index " + index_ + " --facet gender=female");
  ASSERT_EQ(j.code, 0);
  EXPECT_EQ(nlohmann::json::parse(j.out)["states"].size(), 50u);
  auto svg_path = (dir_ / "outdoors.svg").string();
  auto s = run("map --index " + index_ + " --category mini:Outdoors --lexicons " +
               testing::fixture_path("lexicons").string() + " --format svg --out " + svg_path);
  ASSERT_EQ(s.code, 0);
  EXPECT_NE(testing::read_text(svg_path).find("data-usps=\"TX\""), std::string::npos);
}

TEST_F(Cli, CorrelateAndExtremes) {
  auto lex = testing::fixture_path("lexicons").string();
  auto c = run("correlate --index " + index_ + " --a mini:Money --b mini:Outdoors --lexicons " + lex);
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(nlohmann::json::parse(c.out)["correlation"]["n"], 2);
  auto e = run("extremes --index " + index_ + " --lexicon mini --lexicons " + lex + " -k 1");
  ASSERT_EQ(e.code, 0);
  EXPECT_EQ(nlohmann::json::parse(e.out)["pairs_evaluated"], 3);
  auto census = (dir_ / "census.csv").string();
  { std::ofstream(census) << "usps,pop\nCA,39\nTX,29\nNY,20\nFL,21\n"; }
  auto x = run("correlate --index " + index_ + " --external " + census);
  ASSERT_EQ(x.code, 0);
  EXPECT_EQ(nlohmann::json::parse(x.out)["correlation"]["n"], 4);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("map --index " + index_ + " --word lake --category mini:Money").code, 1);
  EXPECT_EQ(run("map --index " + index_).code, 1);
  EXPECT_EQ(run("map --index " + index_ + " --word lake --format pdf").code, 1);
  EXPECT_EQ(run("map --index /nonexistent.idx --word lake").code, 2);
  EXPECT_EQ(run("map --index " + index_ + " --facet industry=aerospace").code, 2);
  EXPECT_EQ(run("map --index " + index_ + " --category mini:Nope --lexicons " +
                testing::fixture_path("lexicons").string()).code,
            2);
  auto bad = (dir_ / "bad.jsonl").string();
  { std::ofstream(bad) << "{not json\n"; }
  EXPECT_EQ(run("ingest --profiles " + bad + " --posts " + bad + " --out " + (dir_ / "x.idx").string()).code, 2);
  auto states = run("states");
  EXPECT_EQ(states.code, 0);
  EXPECT_TRUE(states.out.starts_with("usps,name\n"));
  EXPECT_EQ(run("--help").code, 0);
}

}  // namespace
}  // namespace geolex
