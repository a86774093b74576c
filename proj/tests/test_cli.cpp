// Copyright 2026 The fftlb Authors
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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "fftlb/algorithm_io.hpp"
#include "fftlb/builders.hpp"
#include "json.hpp"

namespace fftlb {
namespace {

using Json = nlohmann::json;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("fftlb_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::filesystem::path dir_;
};

TEST_F(CliTest, BuildThenTraceEndsAtNLogN) {
  const auto alg = path("wht8.alg");
  ASSERT_EQ(run_cli({"build", "--wht", "8", "-o", alg}).code, 0);
  EXPECT_EQ(load_algorithm(alg), build_wht(8));
  const auto r = run_cli({"trace", alg});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "# schema_version: 1");
  std::getline(lines, line);
  EXPECT_EQ(line, "t,phi,delta,bound,touched_i,touched_j");
  std::string last;
  while (std::getline(lines, line)) last = line;
  EXPECT_EQ(last.substr(0, 3), "24,");
  EXPECT_NEAR(std::stod(last.substr(3)), 24.0, 1e-9);
}

TEST_F(CliTest, ScanWalshHadamardEight) {
  const auto r = run_cli({"scan", "--build", "wht:8", "--R", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_NEAR(j["lhs"].get<double>(), 2.0, 1e-12);
  EXPECT_NEAR(j["rhs"].get<double>(), 1.0, 1e-12);
}

TEST_F(CliTest, SimulateReportsNoOverflowForWalshHadamard) {
  const auto r = run_cli({"simulate", "--build", "wht:8", "--eps", "2^-10", "--samples", "10000",
                          "--W", "32", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["overflow_cells"], 0);
  EXPECT_DOUBLE_EQ(j["epsilon"].get<double>(), 0x1p-10);
}

TEST_F(CliTest, SparseAndDenseSimulateAgree) {
  const std::vector<std::string> base{"simulate", "--build", "scaled:4:256:2", "--samples", "500",
                                      "--W", "16"};
  auto dense_args = base;
  dense_args.push_back("--dense");
  const auto sparse = run_cli(base);
  const auto dense = run_cli(dense_args);
  ASSERT_EQ(sparse.code, 0);
  ASSERT_EQ(dense.code, 0);
  // Expand sparse rows and compare with the dense listing.
  std::map<std::pair<int, int>, std::string> from_sparse;
  std::istringstream s(sparse.out);
  std::string line;
  std::getline(s, line);
  std::getline(s, line);
  while (std::getline(s, line)) {
    std::istringstream f(line);
    std::string t0, t1, i, rest;
    std::getline(f, t0, ',');
    std::getline(f, t1, ',');
    std::getline(f, i, ',');
    std::getline(f, rest);
    for (int t = std::stoi(t0); t <= std::stoi(t1); ++t) from_sparse[{t, std::stoi(i)}] = rest;
  }
  std::istringstream d(dense.out);
  std::getline(d, line);
  std::getline(d, line);
  std::size_t rows = 0;
  while (std::getline(d, line)) {
    std::istringstream f(line);
    std::string t, i, rest;
    std::getline(f, t, ',');
    std::getline(f, i, ',');
    std::getline(f, rest);
    EXPECT_EQ(from_sparse.at({std::stoi(t), std::stoi(i)}), rest) << line;
    ++rows;
  }
  EXPECT_EQ(rows, from_sparse.size());
}

TEST_F(CliTest, OutputsAreDeterministic) {
  const std::vector<std::vector<std::string>> commands{
      {"build", "--spec", "random:6:40:3"},
      {"validate", "--build", "random:6:40:3"},
      {"trace", "--build", "random:6:40:3", "--P", "proj:0,2,4"},
      {"scan", "--build", "random:6:40:3", "--R", "2", "--per-step"},
      {"chain", "--build", "random:6:40:3", "--R", "3"},
      {"lemma", "--unit-trials", "200", "--trials", "50", "--pairs", "5", "--corrected"},
      {"extract", "--build", "scaled:8:4:4", "--tau", "2"},
      {"volume", "--build", "inverse:8:4:4", "--tau", "2"},
      {"simulate", "--build", "random:6:40:3", "--samples", "300", "--seed", "4"},
      {"underflow", "--build", "inverse:8:4:4", "--tau", "2", "--check-samples", "400"},
  };
  for (const auto& args : commands) {
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    EXPECT_EQ(a.code, b.code) << args[0];
    EXPECT_EQ(a.out, b.out) << args[0];
    EXPECT_FALSE(a.out.empty()) << args[0];
  }
}

TEST_F(CliTest, ThreadCountDoesNotChangeSimulateOutput) {
  const std::vector<std::string> base{"simulate", "--build", "wht:16", "--samples", "1001"};
  auto threaded = base;
  threaded.insert(threaded.end(), {"--threads", "4"});
  EXPECT_EQ(run_cli(base).out, run_cli(threaded).out);
}

TEST_F(CliTest, ParseErrorsReportTheLine) {
  const auto alg = path("bad.alg");
  std::ofstream(alg) << "n 3 m 2\nR 0 1 0.1\nQ 1\n";
  const auto r = run_cli({"trace", alg});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST_F(CliTest, UsageErrorsExitWithOne) {
  EXPECT_EQ(run_cli({}).code, 1);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 1);
  EXPECT_EQ(run_cli({"trace"}).code, 1);
  EXPECT_EQ(run_cli({"trace", path("missing.alg")}).code, 1);
  EXPECT_EQ(run_cli({"build", "--wht", "8", "--dft", "8"}).code, 1);
  EXPECT_EQ(run_cli({"build", "--wht", "6"}).code, 1);
  EXPECT_EQ(run_cli({"scan", "--build", "wht:8", "--R", "5"}).code, 1);
  EXPECT_EQ(run_cli({"simulate", "--build", "wht:8", "--eps", "abc"}).code, 1);
  EXPECT_EQ(run_cli({"trace", "--build", "wht:4", "--P", "proj:7"}).code, 1);
  EXPECT_EQ(run_cli({"extract", "--build", "random:8:20:1"}).code, 1);
}

TEST_F(CliTest, StatedLemmaSweepSignalsViolation) {
  // The unit-pair bound log2 a is exceeded for a = 2; see test_lemmas.cpp.
  const auto r = run_cli({"lemma", "--unit-trials", "10000", "--trials", "20", "--pairs", "2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("unit-pair"), std::string::npos) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_FALSE(j["stated"]["unit_pair"]["holds"].get<bool>());
  EXPECT_EQ(j["stated"]["unit_pair"]["worst_rows"], 2);
  EXPECT_TRUE(j["corrected"]["unit_pair_sharp"]["holds"].get<bool>());
}

TEST_F(CliTest, VolumeBoundForInverseFixture) {
  const auto r = run_cli({"volume", "--build", "inverse:8:4:4", "--tau", "2", "--b", "32",
                          "--n-prime", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_NEAR(j["volume"]["sum_log_gamma"].get<double>(), 8.0, 1e-12);
  EXPECT_NEAR(j["volume"]["closed_form"].get<double>(), 4.292481250360578, 1e-12);
}

TEST_F(CliTest, ProjectionFile) {
  const auto file = path("p.txt");
  std::ofstream(file) << "1 0 0 0\n0 0 0 0\n0 0 1 0\n0 0 0 0\n";
  const Matrix from_file = cli::parse_projection("file:" + file, 4);
  const Matrix from_list = cli::parse_projection("proj:0,2", 4);
  EXPECT_EQ(from_file, from_list);
  EXPECT_EQ(cli::parse_projection("identity", 3), Matrix(Matrix::Identity(3, 3)));
  std::ofstream(file) << "1 0 0\n";
  EXPECT_ANY_THROW(cli::parse_projection("file:" + file, 4));
}

TEST(CliParseTest, RealLiterals) {
  EXPECT_DOUBLE_EQ(cli::parse_real("2^-10"), 0x1p-10);
  EXPECT_DOUBLE_EQ(cli::parse_real("0.25"), 0.25);
  EXPECT_DOUBLE_EQ(cli::parse_real("1e-3"), 1e-3);
  EXPECT_DOUBLE_EQ(cli::parse_real("10^2"), 100.0);
  EXPECT_ANY_THROW(cli::parse_real("2^x"));
  EXPECT_ANY_THROW(cli::parse_real("1.0abc"));
}

TEST_F(CliTest, CorrectedLemmaSweepPasses) {
  const auto r = run_cli({"lemma", "--corrected"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_TRUE(j["corrected"]["unit_pair_sharp"]["holds"].get<bool>());
  EXPECT_TRUE(j["corrected"]["orthogonal_change_factor2"]["holds"].get<bool>());
}

}  // namespace
}  // namespace fftlb
