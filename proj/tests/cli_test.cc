// Copyright 2026 The subpar Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"

namespace {

struct Outcome {
  int exit_code = -1;
  std::string out;
};

// Runs the CLI through the shell, capturing stdout and (with `merge`) stderr.
Outcome Cli(const std::string& args, bool merge = true, const std::string& env = "") {
  const std::string cmd =
      env + " '" + std::string(SUBPAR_CLI_PATH) + "' " + args + (merge ? " 2>&1" : " 2>/dev/null");
  Outcome o;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return o;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) o.out.append(buf.data(), got);
  const int status = pclose(pipe);
  o.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

std::string Data(const std::string& name) { return std::string(SUBPAR_TEST_DATA) + "/" + name; }

std::string TempPath(const std::string& name) {
  return (std::filesystem::temp_directory_path() /
          ("subpar_cli_" + std::to_string(::getpid()) + "_" + name))
      .string();
}

nlohmann::json ReadJson(const std::string& path) {
  std::ifstream in(path);
  return nlohmann::json::parse(in);
}

TEST(CliTest, BruteForceOnK2) {
  const std::string out = TempPath("bf.json");
  const Outcome o = Cli("run --instance " + Data("k2.json") + " --algorithm brute-force --out " + out);
  ASSERT_EQ(o.exit_code, 0) << o.out;
  const auto j = ReadJson(out);
  EXPECT_EQ(j["value"], 1.0);
  EXPECT_EQ(j["solution"], nlohmann::json::array({0}));
  EXPECT_EQ(j["adaptive_rounds"], 1);
  EXPECT_EQ(j["instance_id"], "k2");
  EXPECT_NE(o.out.find("value=1"), std::string::npos);
  std::filesystem::remove(out);
}

TEST(CliTest, ReportOnStdoutWithoutOut) {
  const Outcome o = Cli("run --instance " + Data("k2.json") + " --epsilon 0.05 --seed 3", false);
  ASSERT_EQ(o.exit_code, 0);
  const auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j["algorithm"], "continuous");
  EXPECT_EQ(j["seed"], 3);
  EXPECT_GE(j["value"].get<double>(), 0.45);
  EXPECT_EQ(j["schema"], 1);
}

TEST(CliTest, SameSeedSameReport) {
  const std::string args = "run --instance " + Data("k2.json") + " --algorithm double-greedy --seed 8";
  auto a = nlohmann::json::parse(Cli(args, false).out);
  auto b = nlohmann::json::parse(Cli(args, false, "SUBPAR_THREADS=3").out);
  a.erase("wall_time_ms");
  b.erase("wall_time_ms");
  EXPECT_EQ(a, b);
}

TEST(CliTest, BadFlagsExitTwo) {
  struct Case {
    std::string args;
    std::string flag;
  };
  const std::string k2 = " --instance " + Data("k2.json");
  for (const Case& c : {Case{"run" + k2 + " --epsilon 0.5", "--epsilon"},
                        Case{"run" + k2 + " --epsilon 0", "--epsilon"},
                        Case{"run" + k2 + " --oracle sampled:0", "--oracle"},
                        Case{"run" + k2 + " --algorithm nope", "--algorithm"},
                        Case{"run" + k2 + " --algorithm discrete --mode theorem --epsilon 0.1",
                             "--epsilon"},
                        Case{"run --instance /nonexistent/file.json", "--instance"},
                        Case{"run", "--instance"},
                        Case{"verify --suite nope", "--suite"}}) {
    const Outcome o = Cli(c.args);
    EXPECT_EQ(o.exit_code, 2) << c.args << "\n" << o.out;
    EXPECT_NE(o.out.find(c.flag), std::string::npos) << c.args << "\n" << o.out;
  }
}

TEST(CliTest, VerifyDefaultPasses) {
  const Outcome o = Cli("verify --suite submodularity --suite lovasz --suite dr");
  EXPECT_EQ(o.exit_code, 0) << o.out;
  EXPECT_NE(o.out.find("PASS lovasz"), std::string::npos);
  EXPECT_EQ(o.out.find("FAIL"), std::string::npos);
}

TEST(CliTest, VerifySingleSuite) {
  const Outcome o = Cli("verify --suite lovasz");
  EXPECT_EQ(o.exit_code, 0);
  EXPECT_NE(o.out.find("PASS lovasz"), std::string::npos);
  EXPECT_EQ(o.out.find("submodularity"), std::string::npos);
}

TEST(CliTest, VerifyFlagsNegativeInstance) {
  const Outcome o = Cli("verify --instance " + Data("negative_coverage.json"));
  EXPECT_EQ(o.exit_code, 1);
  EXPECT_NE(o.out.find("FAIL non-negativity"), std::string::npos) << o.out;
}

TEST(CliTest, SweepCsv) {
  const std::string out = TempPath("sweep.csv");
  const Outcome o = Cli("sweep --algorithm double-greedy --kind coverage --n-values 4,5 "
                        "--epsilon-values 0.1 --seeds 2 --out " + out);
  ASSERT_EQ(o.exit_code, 0) << o.out;
  std::ifstream in(out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("n,epsilon,seed,algorithm,value", 0), 0u);
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 4 + 2 * 2);
  std::filesystem::remove(out);
}

TEST(CliTest, SweepJson) {
  const Outcome o = Cli("sweep --algorithm random-half --n-values 4 --seeds 3 --format json", false);
  ASSERT_EQ(o.exit_code, 0);
  const auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j["rows"].size(), 3u);
  EXPECT_EQ(j["cells"].size(), 1u);
}

}  // namespace
