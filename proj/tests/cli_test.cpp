#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "rainbow/cli.hpp"
#include "rainbow/oracles.hpp"

namespace rainbow::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::string data(const std::string& name) { return (fs::path(RAINBOW_TEST_DATA) / name).string(); }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("rainbow_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
    ::unsetenv("RAINBOW_SEED");
  }
  void TearDown() override {
    fs::remove_all(dir_);
    ::unsetenv("RAINBOW_SEED");
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, GenCompleteGraph) {
  const Result r = call({"gen", "--n", "10", "--p", "1.0", "--c", "3", "--seed", "1", "--out", path("g.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  const ColouredGraph g = read_edge_list_file(path("g.txt"));
  EXPECT_EQ(g.size(), 45u);
  for (const Edge& e : g.edges()) {
    EXPECT_GE(e.colour, 1u);
    EXPECT_LE(e.colour, 3u);
  }
  const Json record = Json::parse(r.out);
  EXPECT_EQ(record["summary"]["edges"], 45);
  EXPECT_EQ(record["summary"]["components"], 1);
  EXPECT_EQ(record["config"]["seed"], 1);
  EXPECT_EQ(record["config"]["c"], 3);
}

TEST_F(CliTest, GenEmptyGraph) {
  const Result r = call({"gen", "--n", "100", "--p", "0", "--c", "1", "--seed", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "100 1\n");
}

TEST_F(CliTest, GenIsByteIdenticalOnRerun) {
  const std::vector<std::string> flags{"gen", "--n", "3000", "--d", "1.5", "--c", "40", "--seed", "17"};
  std::vector<std::string> first = flags, second = flags;
  first.insert(first.end(), {"--out", path("a.txt")});
  second.insert(second.end(), {"--out", path("b.txt")});
  ASSERT_EQ(call(first).code, 0);
  ASSERT_EQ(call(second).code, 0);
  EXPECT_EQ(slurp(path("a.txt")), slurp(path("b.txt")));
  EXPECT_FALSE(slurp(path("a.txt")).empty());
}

TEST_F(CliTest, SeedFallsBackToEnvironment) {
  const Result flag = call({"gen", "--n", "500", "--eps", "0.1", "--seed", "5"});
  ::setenv("RAINBOW_SEED", "5", 1);
  const Result env = call({"gen", "--n", "500", "--eps", "0.1"});
  EXPECT_EQ(flag.out, env.out);
  ::setenv("RAINBOW_SEED", "five", 1);
  EXPECT_EQ(call({"gen", "--n", "500", "--eps", "0.1"}).code, kExitUsage);
  ::unsetenv("RAINBOW_SEED");
  EXPECT_NE(call({"gen", "--n", "500", "--eps", "0.1"}).out, flag.out);
}

TEST_F(CliTest, GenConfigurationAndForestModels) {
  const Result config = call({"gen", "--model", "config", "--degrees", "3,1,2,2", "--seed", "2", "--out", path("cm.txt")});
  ASSERT_EQ(config.code, 0) << config.err;
  const ColouredGraph g = read_edge_list_file(path("cm.txt"));
  EXPECT_EQ(degree_sequence(g).degrees, (std::vector<std::size_t>{3, 1, 2, 2}));
  EXPECT_EQ(call({"gen", "--model", "config", "--degrees", "1,2"}).code, kExitUsage);

  const Result forest = call({"gen", "--model", "forest", "--n", "50", "--t", "4", "--seed", "3"});
  ASSERT_EQ(forest.code, 0) << forest.err;
  const RootedForest f = forest_from_text(forest.out);
  EXPECT_EQ(f.m, 50u);
  EXPECT_EQ(f.t, 4u);
}

TEST_F(CliTest, SubFinderSpansRainbowPath) {
  const Result r = call({"find", "--finder", "sub", "--input", data("rainbow_path.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["result"]["order"], 6);
}

TEST_F(CliTest, SuperFinderOnTreeReportsEmptyCore) {
  const Result r = call({"find", "--finder", "super", "--input", data("star_tree.txt")});
  EXPECT_EQ(r.code, kExitNotFound);
  EXPECT_NE(r.err.find("EmptyCore"), std::string::npos);
  const Result fallback = call({"find", "--finder", "super", "--fallback", "--input", data("star_tree.txt")});
  ASSERT_EQ(fallback.code, 0) << fallback.err;
  EXPECT_EQ(Json::parse(fallback.out)["result"]["fallback_used"], true);
}

TEST_F(CliTest, GreedyRdfsMatchesGoldenAndOracle) {
  const Result r = call({"find", "--finder", "rdfs", "--mode", "greedy", "--input", data("fixture_rdfs.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json result = Json::parse(r.out)["result"];
  EXPECT_EQ(result.dump() + "\n", slurp(data("rdfs_greedy.golden.json")));

  const ColouredGraph g = read_edge_list_file(data("fixture_rdfs.txt"));
  std::vector<Edge> path;
  for (const auto& e : result["edges"]) path.push_back({e[0], e[1], e[2]});
  EXPECT_TRUE(is_rainbow(path));
  EXPECT_TRUE(is_tree(path));
  const auto vertices = result["vertices"].get<std::vector<Vertex>>();
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    const Vertex a = std::min(vertices[i], vertices[i + 1]), b = std::max(vertices[i], vertices[i + 1]);
    EXPECT_EQ(std::min(path[i].u, path[i].v), a);
    EXPECT_EQ(std::max(path[i].u, path[i].v), b);
  }
  EXPECT_LE(result["order"].get<std::size_t>(), exact_max_rainbow_tree(g).order);
}

TEST_F(CliTest, FindOnGeneratedGraphAndRbfs) {
  const Result rdfs = call({"find", "--finder", "rdfs", "--mode", "faithful", "--n", "2000", "--d", "8", "--seed", "4"});
  ASSERT_EQ(rdfs.code, 0) << rdfs.err;
  const Json record = Json::parse(rdfs.out);
  EXPECT_EQ(record["config"]["query_budget"], 125000);
  EXPECT_EQ(record["config"]["graph"]["seed"], 4);
  const Result rbfs = call({"find", "--finder", "rbfs", "--n", "2000", "--d", "3", "--seed", "4"});
  ASSERT_EQ(rbfs.code, 0) << rbfs.err;
  EXPECT_EQ(rbfs.out, call({"find", "--finder", "rbfs", "--n", "2000", "--d", "3", "--seed", "4"}).out);
  EXPECT_EQ(call({"find", "--finder", "rbfs", "--mode", "faithful", "--delta", "1.5", "--n", "100", "--d", "3"}).code,
            kExitUsage);
}

TEST_F(CliTest, CycleFinderIsDeterministic) {
  const std::vector<std::string> flags{"find", "--finder", "cycle", "--n", "3000", "--d", "20", "--delta", "0.5",
                                       "--seed", "6"};
  const Result a = call(flags), b = call(flags);
  EXPECT_TRUE(a.code == 0 || a.code == kExitNotFound) << a.err;
  EXPECT_EQ(a.out, b.out);
  const Json result = Json::parse(a.out)["result"];
  EXPECT_EQ(a.code == 0, !result["cycle"].is_null());
  EXPECT_EQ(call({"find", "--finder", "cycle", "--input", data("star_tree.txt")}).code, kExitUsage);
}

TEST_F(CliTest, TimingIsOptIn) {
  const Result plain = call({"find", "--finder", "sub", "--input", data("rainbow_path.txt")});
  EXPECT_FALSE(Json::parse(plain.out).contains("wall_time_s"));
  const Result timed = call({"find", "--finder", "sub", "--timing", "--input", data("rainbow_path.txt")});
  EXPECT_TRUE(Json::parse(timed.out).contains("wall_time_s"));
}

TEST_F(CliTest, UsageErrorsExit64) {
  const Result suite = call({"experiment", "--suite", "nonsense"});
  EXPECT_EQ(suite.code, kExitUsage);
  EXPECT_NE(suite.err.find("Usage"), std::string::npos);
  EXPECT_EQ(call({"gen", "--n", "10", "--p", "0.5", "--bogus", "1"}).code, kExitUsage);
  EXPECT_EQ(call({}).code, kExitUsage);
  EXPECT_EQ(call({"gen", "--n", "10", "--p", "0.5", "--d", "2"}).code, kExitUsage);
  EXPECT_EQ(call({"gen", "--n", "10", "--p", "1.5"}).code, kExitUsage);
  EXPECT_EQ(call({"find", "--finder", "sub", "--input", path("missing.txt")}).code, kExitUsage);
  EXPECT_EQ(call({"experiment", "--suite", "borel", "--raw"}).code, kExitUsage);
}

TEST_F(CliTest, HelpListsDefaults) {
  const Result gen = call({"gen", "--help"});
  EXPECT_EQ(gen.code, 0);
  EXPECT_NE(gen.out.find("[gnp]"), std::string::npos);
  EXPECT_NE(gen.out.find("--seed"), std::string::npos);
  const Result find = call({"find", "--help"});
  EXPECT_NE(find.out.find("[greedy]"), std::string::npos);
  EXPECT_NE(find.out.find("[0.5]"), std::string::npos);
  const Result exp = call({"experiment", "--help"});
  EXPECT_NE(exp.out.find("--threads"), std::string::npos);
  EXPECT_NE(exp.out.find("min-split"), std::string::npos);
}

TEST_F(CliTest, ExperimentCsvIsThreadIndependent) {
  const Result one = call({"experiment", "--suite", "borel", "--reps", "1000", "--seed", "7", "--threads", "1",
                           "--raw", "--out", path("one.csv")});
  const Result three = call({"experiment", "--suite", "borel", "--reps", "1000", "--seed", "7", "--threads", "3",
                             "--raw", "--out", path("three.csv")});
  EXPECT_EQ(one.code, three.code);
  const std::string csv = slurp(path("one.csv"));
  EXPECT_EQ(csv, slurp(path("three.csv")));
  EXPECT_EQ(slurp(path("one.csv.json")), slurp(path("three.csv.json")));
  EXPECT_EQ(csv.rfind("# {\"command\":\"experiment\",\"suite\":\"borel\"", 0), 0u);
  EXPECT_NE(csv.find("pmf k=1"), std::string::npos);
  EXPECT_EQ(one.code == 0, csv.find(",fail,") == std::string::npos);
  const Json raw = Json::parse(slurp(path("one.csv.json")));
  EXPECT_EQ(raw["records"].size(), 1000u);
}

TEST_F(CliTest, SmokeAllSuites) {
  const Result r = call({"experiment", "--suite", "all", "--reps", "3", "--n", "3000", "--seed", "2"});
  EXPECT_TRUE(r.code == 0 || r.code == kExitFailure) << r.err;
  for (const char* experiment : {"min_split", "bridge_number", "min_double_bridge", "tree_size_law",
                                 "phase_transition", "giant", "cycle"})
    EXPECT_NE(r.out.find("\n" + std::string(experiment) + ","), std::string::npos) << experiment;
  EXPECT_EQ(r.code == 0, r.out.find(",fail,") == std::string::npos);
}

}  // namespace
}  // namespace rainbow::cli
