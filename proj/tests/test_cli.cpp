#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "kst/cli.hpp"

using namespace kst;
using namespace fixtures;
namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("kst_cli_" + std::to_string(::getpid()) + "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    auto p = file(name);
    std::ofstream(p) << text;
    return p;
  }

  std::string write_graph(const std::string& name, const Graph& g) const { return write(name, to_edge_list(g)); }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return cli::run(std::move(args), out_, err_);
  }

  json last_json() const {
    const auto s = out_.str();
    return json::parse(s.substr(s.find_first_of("{[")));
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

std::string read(const std::string& p) {
  std::ifstream f(p);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

} // namespace

TEST_F(Cli, CheckExtremalGraph) {
  auto g = write_graph("h.txt", build_h({2, 11}));
  EXPECT_EQ(run({"check", g, "--k", "2"}), 0);
  EXPECT_NE(out_.str().find("fails: delta 3 < 4"), std::string::npos);
  auto j = last_json();
  EXPECT_FALSE(j["report"]["thm1_6"].get<bool>());
  EXPECT_EQ(j["report"]["delta"], 3);
}

TEST_F(Cli, CheckSmallCompleteGraph) {
  auto g = write_graph("k10.txt", complete(10));
  EXPECT_EQ(run({"check", g}), 0);
  auto j = last_json();
  EXPECT_EQ(j["report"]["nc"], "complete");
  EXPECT_EQ(j["report"]["thm1_6_failures"][0].get<std::string>().rfind("n < n1", 0), 0u);
}

TEST_F(Cli, CheckParseErrorExitsTwoWithLine) {
  auto g = write("bad.txt", "3 1\n1 1\n");
  EXPECT_EQ(run({"check", g}), 2);
  EXPECT_NE(last_json()["error"].get<std::string>().find("line 2"), std::string::npos);
}

TEST_F(Cli, CheckMissingFileExitsTwo) { EXPECT_EQ(run({"check", file("absent.txt")}), 2); }

TEST_F(Cli, SolveExitCodes) {
  EXPECT_EQ(run({"solve", write_graph("p4.txt", path(4)), "--k", "2"}), 1);
  auto cert = file("k4.cert");
  EXPECT_EQ(run({"solve", write_graph("k4.txt", complete(4)), "--k", "2", "--cert", cert}), 0);
  EXPECT_EQ(certificate_from_text(read(cert)).edges.size(), 3u);
  EXPECT_EQ(run({"solve", write_graph("km.txt", complete_minus_matching(15)), "--k", "2", "--node-limit", "10"}), 3);
  EXPECT_EQ(last_json()["outcome"]["status"], "budget_exhausted");
  EXPECT_EQ(run({"solve", write_graph("c4.txt", cycle(4)), "--naive"}), 1);
}

TEST_F(Cli, SolveWritesDot) {
  auto dot = file("k4.dot");
  EXPECT_EQ(run({"solve", write_graph("k4.txt", complete(4)), "--dot", dot}), 0);
  EXPECT_NE(read(dot).find("penwidth=3"), std::string::npos);
}

TEST_F(Cli, ConstructThenVerify) {
  auto g = write_graph("case1.txt", case_family("W-connected/Case1", 2, 276));
  auto cert = file("case1.cert"), trace = file("case1.trace.json");
  EXPECT_EQ(run({"construct", g, "--k", "2", "--cert", cert, "--trace", trace}), 0);
  auto j = last_json();
  EXPECT_EQ(j["trace"]["label"], "W-connected/Case1");
  EXPECT_EQ(json::parse(read(trace))["label"], "W-connected/Case1");
  EXPECT_EQ(run({"verify", g, cert, "--k", "2"}), 0);
  EXPECT_EQ(out_.str(), "full_2k_ST\n");
}

TEST_F(Cli, ConstructHypothesisViolationExitsFour) {
  auto g = write_graph("h.txt", build_h({2, 276}));
  EXPECT_EQ(run({"construct", g, "--k", "2"}), 4);
  EXPECT_EQ(last_json()["failure"]["kind"], "hypothesis");
}

TEST_F(Cli, ConstructInternalFailureExitsFiveWithLedger) {
  // three cliques behind N(u): outside the hypotheses, pushed through with --unchecked
  detail::EdgeTable t(276);
  t.clique(0, 5);
  t.clique(5, 96);
  t.clique(96, 186);
  t.clique(186, 276);
  t.add(1, 5);
  t.add(1, 96);
  t.add(1, 186);
  auto g = write_graph("three.txt", t.build());
  EXPECT_EQ(run({"construct", g, "--k", "2", "--unchecked"}), 5);
  auto j = last_json();
  EXPECT_EQ(j["failure"]["kind"], "internal");
  auto ledger = j["trace"]["ledger"];
  ASSERT_FALSE(ledger.empty());
  EXPECT_FALSE(ledger.back()["holds"].get<bool>());
  EXPECT_TRUE(ledger.back().contains("lhs"));
  EXPECT_TRUE(ledger.back().contains("rhs"));
}

TEST_F(Cli, ConstructFallbackRescuesInternalFailure) {
  detail::EdgeTable t(276);
  t.clique(0, 5);
  t.clique(5, 96);
  t.clique(96, 186);
  t.clique(186, 276);
  t.add(1, 5);
  t.add(1, 96);
  t.add(1, 186);
  auto g = write_graph("three.txt", t.build());
  EXPECT_EQ(run({"construct", g, "--k", "2", "--unchecked", "--fallback-exact"}), 0);
  EXPECT_EQ(last_json()["status"], "fallback_exact");
}

TEST_F(Cli, VerifyExitCodes) {
  auto k5 = write_graph("k5.txt", complete(5));
  auto star = write("star.cert", to_text(star_certificate(0, VertexSet{1, 2, 3, 4}, 2)));
  EXPECT_EQ(run({"verify", k5, star}), 0);
  auto p4 = write_graph("p4.txt", path(4));
  auto pc = write("path.cert", "cert k=2\nvertices: 0 1 2 3\nedge 0 1\nedge 1 2\nedge 2 3\n");
  EXPECT_EQ(run({"verify", p4, pc, "--k", "2"}), 1);
  EXPECT_EQ(out_.str(), "quasi(2, {1,2})\n");
  auto foreign = write("foreign.cert", "cert k=2\nvertices: 0 1 2 3\nedge 0 1\nedge 1 2\nedge 0 3\n");
  EXPECT_EQ(run({"verify", p4, foreign, "--k", "2"}), 2);
  auto garbage = write("garbage.cert", "hello\n");
  EXPECT_EQ(run({"verify", p4, garbage}), 2);
  EXPECT_EQ(run({"verify", p4, file("none.cert")}), 2);
  EXPECT_EQ(run({"verify", k5, star, "--json"}), 0);
  EXPECT_EQ(last_json()["classification"]["class"], "full_2k_ST");
}

TEST_F(Cli, GenFamilies) {
  EXPECT_EQ(run({"gen", "--family", "h", "--k", "2", "--n", "11"}), 0);
  std::istringstream in(out_.str());
  EXPECT_EQ(read_edge_list(in).edges(), build_h({2, 11}).edges());

  EXPECT_EQ(run({"gen", "--family", "random", "--n", "8", "--p", "0.5"}), 0);
  const auto first = out_.str();
  EXPECT_EQ(run({"gen", "--family", "random", "--n", "8", "--p", "0.5"}), 0);
  EXPECT_EQ(out_.str(), first);
  EXPECT_EQ(run({"gen", "--family", "random", "--n", "8", "--p", "0.5", "--seed", "42"}), 0);
  std::istringstream seeded(out_.str());
  EXPECT_EQ(read_edge_list(seeded).edges(), random_graph(8, 0.5, 42).edges());

  auto out = file("case.txt"), dot = file("case.dot");
  EXPECT_EQ(run({"gen", "--family", "case:W-disconnected/overlap/Case1", "--k", "2", "--n", "276", "--out", out, "--dot", dot}), 0);
  EXPECT_EQ(read_edge_list_file(out).order(), 276);
  EXPECT_EQ(read(dot).rfind("graph G {", 0), 0u);

  EXPECT_EQ(run({"gen", "--family", "case:W-connected/Case1", "--k", "2", "--n", "100"}), 2);
  EXPECT_EQ(run({"gen", "--family", "bogus"}), 2);
}

TEST_F(Cli, Thresholds) {
  EXPECT_EQ(run({"thresholds", "2", "5", "--json"}), 0);
  auto j = last_json();
  EXPECT_EQ(j[0]["n1"], 276);
  EXPECT_EQ(j[1]["n1"], 4356);
  EXPECT_EQ(run({"thresholds", "10", "--json"}), 0);
  EXPECT_GT(last_json()[0]["n1"].get<long long>(), 16000);
  EXPECT_EQ(run({"thresholds"}), 0);
  EXPECT_NE(out_.str().find("2306"), std::string::npos);
}

TEST_F(Cli, MultipleFilesWithJobs) {
  std::vector<std::string> args{"solve", "--k", "2", "--jobs", "3", "--out-dir", dir_.string()};
  args.push_back(write_graph("a.txt", complete(5)));
  args.push_back(write_graph("b.txt", path(5)));
  args.push_back(write_graph("c.txt", wheel(6)));
  EXPECT_EQ(run(args), 1);
  auto j = last_json();
  ASSERT_EQ(j.size(), 3u);
  EXPECT_EQ(j[0]["outcome"]["status"], "found");
  EXPECT_EQ(j[1]["outcome"]["status"], "none");
  EXPECT_EQ(j[2]["outcome"]["status"], "found");
  EXPECT_TRUE(fs::exists(file("a.cert")));
  EXPECT_FALSE(fs::exists(file("b.cert")));
}

TEST_F(Cli, ReportsAreStable) {
  auto g = write_graph("case.txt", case_family("W-disconnected/disjoint/Case3", 2, 276));
  run({"construct", g});
  const auto first = out_.str();
  run({"construct", g, "--jobs", "2"});
  EXPECT_EQ(out_.str(), first);
}

TEST_F(Cli, UsageErrorExitsTwo) {
  EXPECT_EQ(run({}), 2);
  EXPECT_EQ(run({"solve"}), 2);
  EXPECT_EQ(run({"check", "x", "--k", "1"}), 2);
}

TEST_F(Cli, BinaryExitCodes) {
  const char* bin = std::getenv("KST_CLI");
  if (!bin)
    GTEST_SKIP() << "KST_CLI not set";
  auto g = write_graph("p4.txt", path(4));
  auto status = [&](const std::string& args) {
    int s = std::system((std::string(bin) + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  EXPECT_EQ(status("solve " + g), 1);
  EXPECT_EQ(status("thresholds 2"), 0);
  EXPECT_EQ(status("check " + write("bad.txt", "2 1\n0 0\n")), 2);
}
