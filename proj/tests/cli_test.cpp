// Copyright 2026 The prefrank Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace prefrank::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(PREFRANK_TEST_DATA) + "/" + name; }

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("prefrank_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string write(const std::string& name, const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines_starting(const std::string& text, const std::string& prefix) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.starts_with(prefix)) out.push_back(line);
  }
  return out;
}

TEST(CliOrder, CycleGreedy) {
  const auto r = run_cli({"order", data("cycle3.tsv"), "--algo", "greedy"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("1\ta\n2\tb\n3\tc\n"), std::string::npos);
  EXPECT_NE(r.out.find("agree\t2.000000"), std::string::npos);
}

TEST(CliOrder, SplitCycleScc) {
  const auto r = run_cli({"order", data("split_cycle.tsv"), "--algo", "scc_greedy"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("1\tb\n2\tc\n3\td\n4\ta\n"), std::string::npos);
}

TEST(CliOrder, WalkthroughGreedy) {
  const auto r = run_cli({"order", data("walkthrough.tsv"), "--algo", "greedy"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("1\tb\n2\td\n3\tc\n4\ta\n"), std::string::npos);
}

TEST(CliOrder, WithFeedbackReportsLosses) {
  TempDir tmp;
  const auto fb = tmp.write("fb.tsv", "a\tb\nc\ta\n");
  const auto r = run_cli({"order", data("cycle3.tsv"), "--feedback", fb});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("pref_loss\t"), std::string::npos);
  EXPECT_NE(r.out.find("order_loss\t"), std::string::npos);
}

TEST(CliOrder, ErrorsMapToExitCodes) {
  TempDir tmp;
  EXPECT_EQ(run_cli({"order", tmp.write("empty.tsv", "")}).code, kParseError);
  const auto bad = run_cli({"order", tmp.write("bad.tsv", "a b 0.5\na b\n")});
  EXPECT_EQ(bad.code, kParseError);
  EXPECT_NE(bad.err.find("line 2"), std::string::npos);
  std::string big;
  for (int i = 0; i < 13; ++i) big += "n" + std::to_string(i) + "\tn" + std::to_string(i + 1) + "\t1\n";
  EXPECT_EQ(run_cli({"order", tmp.write("big.tsv", big), "--algo", "brute"}).code, kGuardViolation);
  EXPECT_EQ(run_cli({"order", tmp.file("missing.tsv")}).code, kIoError);
  EXPECT_EQ(run_cli({"order", data("cycle3.tsv"), "--algo", "nope"}).code, kParseError);
}

TEST(CliHedge, SingleExpertKeepsAllWeight) {
  TempDir tmp;
  const auto f = tmp.write("r.txt", "R\nE 0 a=3 b=2 c=1\nF a c\nR\nE 0 a=1 b=2\nF a b\n");
  const auto r = run_cli({"hedge", f});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("0\t1.000000000"), std::string::npos);
  EXPECT_NE(r.out.find("\tholds"), std::string::npos);
}

TEST(CliHedge, FavoredExpertGainsEveryRound) {
  TempDir tmp;
  std::string text;
  for (int t = 0; t < 6; ++t) text += "R\nE 0 a=2 b=1 c=0\nE 1 a=0 b=1 c=2\nF a b\nF b c\n";
  const auto f = tmp.write("r.txt", text);
  double prev = 0.5;
  for (int t = 1; t <= 6; ++t) {
    // Truncate the rounds file after t rounds and read expert 0's weight.
    std::string head;
    std::istringstream in(text);
    std::string line;
    int seen = 0;
    while (std::getline(in, line)) {
      if (line == "R" && ++seen > t) break;
      head += line + "\n";
    }
    const auto r = run_cli({"hedge", tmp.write("r" + std::to_string(t) + ".txt", head)});
    ASSERT_EQ(r.code, kOk);
    const auto w = lines_starting(r.out, "0\t");
    ASSERT_FALSE(w.empty());
    const double weight = std::stod(w.back().substr(2));
    EXPECT_GT(weight, prev);
    prev = weight;
  }
  EXPECT_EQ(run_cli({"hedge", f}).code, kOk);
}

TEST(CliHedge, WeightedRoundsSkipTriangleAudit) {
  TempDir tmp;
  const auto f = tmp.write("r.txt", "R\nE 0 a=1 b=2\nE 1 a=2 b=1\nF b a 3\nR\nE 0 a=1 b=2\nE 1 a=2 b=1\nF b a\n");
  const auto r = run_cli({"hedge", f, "--algo", "greedy"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("triangle\tchecked=1\tskipped=1\tholds"), std::string::npos);
}

TEST(CliHedge, MalformedAndBadBeta) {
  TempDir tmp;
  EXPECT_EQ(run_cli({"hedge", tmp.write("r.txt", "R\nE 1 a=1\n")}).code, kParseError);
  const auto ok = tmp.write("ok.txt", "R\nE 0 a=1 b=0\nF a b\n");
  EXPECT_EQ(run_cli({"hedge", ok, "--beta", "1"}).code, kParseError);
}

TEST(CliBench, DeterministicAndGuarded) {
  const std::vector<std::string> args = {"bench", "--sizes", "3-6", "--count", "1", "--seed", "7"};
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  EXPECT_EQ(a.code, kOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(run_cli({"bench", "--sizes", "10", "--count", "1"}).code, kGuardViolation);
  EXPECT_EQ(run_cli({"bench", "--sizes", "10,12", "--count", "1", "--mode", "total"}).code, kOk);
  EXPECT_EQ(run_cli({"bench", "--sizes", "x"}).code, kParseError);
}

TEST(CliGen, RoundTripCountsAndDeterminism) {
  TempDir tmp;
  const auto p1 = tmp.file("a.txt");
  const auto p2 = tmp.file("b.txt");
  ASSERT_EQ(run_cli({"gen", "--experts", "4", "--queries", "50", "--seed", "3", "--out", p1}).code, kOk);
  ASSERT_EQ(run_cli({"gen", "--experts", "4", "--queries", "50", "--seed", "3", "--out", p2}).code, kOk);
  const auto text = slurp(p1);
  EXPECT_EQ(text, slurp(p2));
  EXPECT_EQ(lines_starting(text, "Q ").size(), 50u);
  EXPECT_EQ(lines_starting(text, "E ").size(), 200u);
  const auto stdout_run = run_cli({"gen", "--experts", "4", "--queries", "50", "--seed", "3"});
  EXPECT_EQ(stdout_run.out, text);
  EXPECT_EQ(run_cli({"gen", "--out", tmp.file("no/such/dir/x.txt")}).code, kIoError);
  EXPECT_EQ(run_cli({"gen", "--experts", "3", "--quality", "0.5,0.4"}).code, kParseError);
}

TEST(CliMetasearch, FullModeInvariantAndClickDeterministic) {
  TempDir tmp;
  const auto ds = tmp.file("d.txt");
  ASSERT_EQ(run_cli({"gen", "--experts", "3", "--queries", "12", "--quality", "0.9,0.3,0.2",
                     "--seed", "5", "--out", ds})
                .code,
            kOk);
  const auto one = run_cli({"metasearch", ds, "--permutations", "1"});
  const auto many = run_cli({"metasearch", ds, "--permutations", "100", "--seed", "9"});
  EXPECT_EQ(one.code, kOk);
  EXPECT_EQ(one.out, many.out);
  EXPECT_NE(one.out.find("sign_test\texpert_0"), std::string::npos);
  EXPECT_NE(one.out.find("audits\ttraining_runs=12\tloss_bound_violations=0\ttriangle_violations=0"),
            std::string::npos);
  const std::vector<std::string> click = {"metasearch", ds,  "--feedback", "click",
                                          "--permutations", "5", "--seed", "4"};
  const auto c1 = run_cli(click);
  EXPECT_EQ(c1.code, kOk);
  EXPECT_EQ(c1.out, run_cli(click).out);
  EXPECT_EQ(run_cli({"metasearch", tmp.write("bad.txt", "Q q\n")}).code, kParseError);
  EXPECT_EQ(run_cli({"metasearch", tmp.file("missing.txt")}).code, kIoError);
}

TEST(Cli, HelpAndUnknownCommand) {
  EXPECT_EQ(run_cli({"--help"}).code, kOk);
  EXPECT_NE(run_cli({"frobnicate"}).code, kOk);
  EXPECT_NE(run_cli({}).code, kOk);
}

}  // namespace
}  // namespace prefrank::cli
