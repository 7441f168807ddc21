#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "rgcap/cli.hpp"
#include "rgcap/graph.hpp"

namespace rgcap {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(RGCAP_TEST_DATA_DIR) + "/" + name; }

// Strips '#' manifest lines.
std::string body(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] != '#') out += line + "\n";
  }
  return out;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("rgcap_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, CapacityFixtures) {
  CliRun r = run_cli({"capacity", "--graph", data("cycle4.txt"), "--s", "0", "--t", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["value"].get<double>(), 2.0);

  r = run_cli({"capacity", "--graph", data("edgeless3.txt"), "--t", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["value"].get<double>(), 0.0);

  r = run_cli({"capacity", "--graph", data("k5.txt"), "--t", "4"});
  EXPECT_EQ(nlohmann::json::parse(r.out)["value"].get<double>(), 3.0);
  r = run_cli({"capacity", "--graph", data("k5.txt"), "--t", "4", "--mode", "graph"});
  EXPECT_EQ(nlohmann::json::parse(r.out)["value"].get<double>(), 4.0);
  r = run_cli({"capacity", "--graph", data("k5.txt"), "--terminals", "3,4"});
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["value"].get<double>(), 2.0);
  EXPECT_EQ(j["terminal"], 3);
}

TEST_F(CliTest, CapacityUsageErrors) {
  EXPECT_EQ(run_cli({"capacity", "--graph", data("k5.txt")}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"capacity", "--graph", data("k5.txt"), "--t", "1", "--terminals", "2"}).code,
            cli::kUsage);
  EXPECT_EQ(run_cli({"capacity", "--graph", data("missing.txt"), "--t", "1"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"capacity", "--graph", data("k5.txt"), "--t", "0"}).code, cli::kUsage);
}

TEST_F(CliTest, GenerateIsReproducible) {
  const std::vector<std::string> args{"generate", "sws", "--n", "30", "--k", "4",
                                      "--p", "0.2", "--seed", "7", "--out"};
  auto a = args;
  a.push_back(path("a.txt"));
  auto b = args;
  b.push_back(path("b.txt"));
  ASSERT_EQ(run_cli(a).code, 0);
  ASSERT_EQ(run_cli(b).code, 0);
  EXPECT_EQ(slurp(path("a.txt")), slurp(path("b.txt")));
  EXPECT_NE(slurp(path("a.txt")).find("seed=7"), std::string::npos);
  std::istringstream in(slurp(path("a.txt")));
  EXPECT_EQ(read_edge_list(in).node_count(), 30u);
}

TEST_F(CliTest, GenerateWithoutSeedEchoesOne) {
  const CliRun r = run_cli({"generate", "swr", "--n", "12", "--k", "2", "--p", "0.3"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("seed="), std::string::npos);
}

TEST_F(CliTest, GenerateDrnWritesPositions) {
  const CliRun r = run_cli({"generate", "drn", "--n", "15", "--p", "0.5", "--rs", "0.1", "--rl",
                         "0.3", "--seed", "3", "--out", path("g.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string positions = body(slurp(path("g.txt.pos")));
  EXPECT_EQ(std::count(positions.begin(), positions.end(), '\n'), 15);
}

TEST_F(CliTest, InvalidModelParametersExitOne) {
  CliRun r = run_cli({"generate", "sws", "--n", "20", "--k", "3", "--p", "0.2"});
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_NE(r.err.find("k must be even"), std::string::npos);
  r = run_cli({"generate", "drn", "--n", "20", "--p", "0.2", "--rs", "0.1", "--rl", "0.7"});
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_NE(r.err.find("1/sqrt(pi)"), std::string::npos);
  EXPECT_EQ(run_cli({"bounds", "mesh", "--n", "20", "--p", "0.2"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({}).code, cli::kUsage);
}

TEST_F(CliTest, BoundsJsonAndCsv) {
  CliRun r = run_cli({"bounds", "sws", "--n", "200", "--k", "8", "--p", "0.2", "--d", "1.2"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["epsilon"].get<double>(), 0.89513, 5e-6);
  EXPECT_NEAR(j["c_min"].get<double>(), 46.2, 1e-12);
  r = run_cli({"bounds", "swr", "--n", "50", "--k", "4", "--p", "0.2", "--csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("model,n,k", 0), 0u);
}

TEST_F(CliTest, ExperimentOutputsAndAssertion) {
  const CliRun r = run_cli({"experiment", "sws", "--n", "40", "--k", "4", "--p", "0.3", "--trials",
                         "10", "--seed", "5", "--json", path("e.json"), "--csv", path("e.csv"),
                         "--assert-bounds"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(path("e.json")));
  EXPECT_EQ(j["seed"], 5);
  EXPECT_EQ(j["capacities"].size(), 10u);
  const std::string csv = body(slurp(path("e.csv")));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
  EXPECT_NE(slurp(path("e.csv")).find("# rgcap"), std::string::npos);
}

TEST_F(CliTest, AssertBoundsFailsWhenBudgetExceeded) {
  // A tiny d gives a near-zero epsilon and an upper budget just under one
  // trial; this seed's single capacity (5) lands above (1 + eps) * k.
  const CliRun r = run_cli({"experiment", "swr", "--n", "40", "--k", "4", "--p", "1", "--trials",
                            "1", "--seed", "4", "--d", "0.001", "--assert-bounds"});
  EXPECT_EQ(r.code, cli::kAssertionFailed) << r.out << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["upper_violations"], 1);
}

TEST_F(CliTest, BudgetRefusal) {
  const CliRun r = run_cli({"experiment", "sws", "--n", "40", "--k", "4", "--p", "0.3", "--trials",
                         "10", "--budget", "399"});
  EXPECT_EQ(r.code, cli::kBudgetRefused);
}

TEST_F(CliTest, SweepGridAndEmptyGrid) {
  CliRun r = run_cli({"sweep", "sws", "--n", "20,24", "--k", "4", "--p", "0.1,0.2,0.3", "--trials",
                   "2", "--seed", "1", "--csv", path("s.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["rows"].size(), 6u);
  const std::string csv = body(slurp(path("s.csv")));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
  r = run_cli({"sweep", "sws", "--n", ",", "--k", "4", "--p", "0.1"});
  EXPECT_EQ(r.code, cli::kUsage);
}

TEST_F(CliTest, ConfigFileOverlay) {
  std::ofstream(path("run.cfg")) << "# defaults\nn = 30\nk=4\np=0.2\ntrials=3\nseed=11\n";
  CliRun r = run_cli({"experiment", "sws", "--config", path("run.cfg"), "--trials", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["trials"], 4);
  EXPECT_EQ(j["seed"], 11);
  EXPECT_EQ(j["report"]["n"], 30);
  std::ofstream(path("bad.cfg")) << "n 30\n";
  EXPECT_EQ(run_cli({"experiment", "sws", "--config", path("bad.cfg")}).code, cli::kUsage);
}

TEST_F(CliTest, IndependenceAndRegime) {
  CliRun r = run_cli({"independence", "drn", "--n", "16", "--p", "1", "--rs", "0.1", "--rl", "0.3",
                   "--trials", "200", "--pairs", "20", "--seed", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["pair_stats"].size(), 20u);
  EXPECT_EQ(run_cli({"independence", "sws", "--n", "16", "--k", "2", "--p", "0.1"}).code,
            cli::kUsage);
  r = run_cli({"regime", "--n", "200", "--k", "8", "--p", "0.99"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["regime"], "converges_rewire_dominance");
}

TEST_F(CliTest, HelpAndVersion) {
  EXPECT_EQ(run_cli({"--help"}).code, 0);
  const CliRun v = run_cli({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find("0.1.0"), std::string::npos);
}

}  // namespace
}  // namespace rgcap
