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


// subpar command line: run, sweep, verify.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "subpar/subpar.h"

namespace {

using subpar::Json;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// A flag value that parsed but failed validation.
struct FlagError {
  std::string flag;
  std::string message;
};

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int ResolveThreads(int flag_value) {
  const char* env = std::getenv("SUBPAR_THREADS");
  if (env == nullptr || *env == '\0') return flag_value;
  try {
    std::size_t used = 0;
    const int v = std::stoi(env, &used);
    if (used == std::string(env).size() && v >= 0) return v;
  } catch (const std::exception&) {
  }
  throw FlagError{"SUBPAR_THREADS", "must be a non-negative integer, got '" + std::string(env) + "'"};
}

void CheckEpsilon(subpar::Algorithm algorithm, subpar::DiscreteMode mode, double eps) {
  using subpar::Algorithm;
  const bool uses_epsilon = algorithm == Algorithm::kContinuous ||
                            algorithm == Algorithm::kDiscrete || algorithm == Algorithm::kDr;
  if (!uses_epsilon) return;
  if (algorithm == Algorithm::kDiscrete && mode == subpar::DiscreteMode::kTheorem) {
    if (!(eps > 0.0 && eps <= subpar::kTheoremMaxEpsilon)) {
      throw FlagError{"--epsilon", "theorem mode needs epsilon in (0, 1/208], got " +
                                       std::to_string(eps)};
    }
    return;
  }
  if (!(eps > 0.0 && eps < 1.0 / 3.0)) {
    throw FlagError{"--epsilon", "epsilon must lie in (0, 1/3), got " + std::to_string(eps)};
  }
}

subpar::DiscreteMode ParseMode(const std::string& mode) {
  return mode == "theorem" ? subpar::DiscreteMode::kTheorem : subpar::DiscreteMode::kEngineering;
}

subpar::OracleSpec ParseOracleFlag(const std::string& flag, const std::string& text) {
  try {
    return subpar::OracleSpec::Parse(text);
  } catch (const subpar::Error& e) {
    throw FlagError{flag, e.what()};
  }
}

std::optional<std::int64_t> SampleOverride(const std::optional<std::uint64_t>& flag,
                                           subpar::DiscreteMode mode) {
  if (!flag) return std::nullopt;
  if (*flag < 1) throw FlagError{"--sample-override", "must be >= 1"};
  if (mode == subpar::DiscreteMode::kTheorem) {
    throw FlagError{"--sample-override", "only valid with --mode engineering"};
  }
  return static_cast<std::int64_t>(*flag);
}

void WriteOutput(const std::optional<std::string>& path, const std::string& text) {
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream out(*path);
  if (!out) throw subpar::Error(subpar::ErrorCode::kInvalidArgument, "cannot write " + *path);
  out << text;
}

std::string OptionalNumber(const std::optional<double>& v) {
  if (!v) return "-";
  std::ostringstream os;
  os << *v;
  return os.str();
}

struct RunFlags {
  std::string instance;
  std::string algorithm = "continuous";
  double epsilon = 0.1;
  std::uint64_t seed = 0;
  std::string oracle = "exact";
  std::string mode = "engineering";
  std::optional<std::uint64_t> sample_override;
  std::optional<std::string> out;
  std::string format = "json";
  int threads = 0;
};

int DoRun(const RunFlags& flags) {
  subpar::RunConfig config;
  config.algorithm = subpar::ParseAlgorithm(flags.algorithm);
  config.epsilon = flags.epsilon;
  config.seed = flags.seed;
  config.mode = ParseMode(flags.mode);
  config.oracle = ParseOracleFlag("--oracle", flags.oracle);
  config.sample_override = SampleOverride(flags.sample_override, config.mode);
  config.threads = ResolveThreads(flags.threads);
  CheckEpsilon(config.algorithm, config.mode, config.epsilon);
  subpar::SetDefaultThreads(config.threads);

  subpar::Instance instance = [&] {
    try {
      return subpar::LoadInstance(flags.instance);
    } catch (const subpar::Error& e) {
      throw FlagError{"--instance", e.what()};
    }
  }();
  const std::string id = std::filesystem::path(flags.instance).stem().string();
  const subpar::RunReport report = subpar::RunAlgorithm(instance, id, config);

  if (flags.format == "json") {
    WriteOutput(flags.out, subpar::ReportToJson(report).dump(2) + "\n");
  } else {
    WriteOutput(flags.out, subpar::CsvHeader() + "\n" +
                               subpar::SweepRowCsv(subpar::ToSweepRow(report)) + "\n");
  }
  std::ostream& summary = flags.out ? std::cout : std::cerr;
  summary << report.algorithm << " on " << report.instance_id << ": value=" << report.value
          << " opt=" << OptionalNumber(report.opt_value)
          << " ratio=" << OptionalNumber(report.ratio) << " rounds=" << report.adaptive_rounds
          << " f_queries=" << report.f_queries << " F_queries=" << report.F_queries
          << " iterations=" << report.iterations << "\n";
  return 0;
}

struct SweepFlags {
  std::string algorithm = "continuous";
  std::string kind = "cut";
  std::string n_values = "8,12,16";
  std::string epsilon_values = "0.1";
  int seeds = 5;
  std::uint64_t first_seed = 1;
  std::string oracle = "exact";
  int large_n = 20;
  std::string large_oracle = "sampled:100";
  std::string mode = "engineering";
  std::optional<std::uint64_t> sample_override;
  std::optional<std::string> out;
  std::string format = "csv";
  int threads = 0;
};

int DoSweep(const SweepFlags& flags) {
  subpar::SweepConfig config;
  config.algorithm = subpar::ParseAlgorithm(flags.algorithm);
  config.kind = subpar::ParseKind(flags.kind);
  config.n_values.clear();
  for (const auto& item : SplitList(flags.n_values)) {
    try {
      const int n = std::stoi(item);
      if (n < 1) throw std::out_of_range("n");
      config.n_values.push_back(n);
    } catch (const std::exception&) {
      throw FlagError{"--n-values", "expected positive integers, got '" + item + "'"};
    }
  }
  config.mode = ParseMode(flags.mode);
  config.epsilon_values.clear();
  for (const auto& item : SplitList(flags.epsilon_values)) {
    double eps = 0.0;
    try {
      eps = std::stod(item);
    } catch (const std::exception&) {
      throw FlagError{"--epsilon-values", "expected numbers, got '" + item + "'"};
    }
    try {
      CheckEpsilon(config.algorithm, config.mode, eps);
    } catch (FlagError& e) {
      e.flag = "--epsilon-values";
      throw;
    }
    config.epsilon_values.push_back(eps);
  }
  if (config.n_values.empty()) throw FlagError{"--n-values", "no values given"};
  if (config.epsilon_values.empty()) throw FlagError{"--epsilon-values", "no values given"};
  if (flags.seeds < 1) throw FlagError{"--seeds", "must be >= 1"};
  config.seeds_per_cell = flags.seeds;
  config.first_seed = flags.first_seed;
  config.oracle = ParseOracleFlag("--oracle", flags.oracle);
  config.large_n = flags.large_n;
  config.large_oracle = ParseOracleFlag("--large-oracle", flags.large_oracle);
  config.sample_override = SampleOverride(flags.sample_override, config.mode);
  config.threads = ResolveThreads(flags.threads);
  subpar::SetDefaultThreads(config.threads);

  const subpar::SweepResult sweep = subpar::RunSweep(config);
  if (flags.format == "csv") {
    WriteOutput(flags.out, subpar::SweepToCsv(sweep));
  } else {
    Json rows = Json::array();
    for (const auto& row : sweep.rows) {
      rows.push_back({{"n", row.n},
                      {"epsilon", row.epsilon},
                      {"seed", row.seed},
                      {"algorithm", row.algorithm},
                      {"value", row.value},
                      {"opt", row.opt ? Json(*row.opt) : Json(nullptr)},
                      {"ratio", row.ratio ? Json(*row.ratio) : Json(nullptr)},
                      {"rounds", row.rounds},
                      {"f_queries", row.f_queries},
                      {"F_queries", row.F_queries},
                      {"iterations", row.iterations},
                      {"wall_ms", row.wall_ms}});
    }
    Json cells = Json::array();
    for (const auto& cell : sweep.cells) {
      cells.push_back({{"n", cell.n},
                       {"epsilon", cell.epsilon},
                       {"algorithm", cell.algorithm},
                       {"runs", cell.runs},
                       {"mean", cell.mean},
                       {"stddev", cell.stddev}});
    }
    WriteOutput(flags.out, Json{{"schema", subpar::kReportSchema},
                                {"rows", rows},
                                {"cells", cells}}
                                   .dump(2) +
                               "\n");
  }
  std::ostream& summary = flags.out ? std::cout : std::cerr;
  summary << "sweep: " << sweep.rows.size() << " runs in " << sweep.cells.size()
            << " cells\n";
  return 0;
}

struct VerifyFlags {
  std::vector<std::string> suites;
  std::optional<std::string> instance;
  std::uint64_t seed = 1;
  int threads = 0;
};

int DoVerify(const VerifyFlags& flags) {
  subpar::SetDefaultThreads(ResolveThreads(flags.threads));
  subpar::VerifyOptions options;
  options.seed = flags.seed;
  if (flags.instance) {
    try {
      // Loaded unchecked so that a bad instance is reported by its suite.
      options.instance = subpar::VerifyCase{
          std::filesystem::path(*flags.instance).stem().string(),
          subpar::LoadInstance(*flags.instance, /*validate=*/false)};
    } catch (const subpar::Error& e) {
      throw FlagError{"--instance", e.what()};
    }
  }
  const auto results = subpar::RunVerify(flags.suites, options);
  std::vector<std::string> failed;
  for (const auto& r : results) {
    std::cout << (r.passed() ? "PASS " : "FAIL ") << r.name << " (" << r.checks
              << " checks)\n";
    for (const auto& msg : r.failures) std::cout << "  " << msg << "\n";
    if (!r.passed()) failed.push_back(r.name);
  }
  if (failed.empty()) {
    std::cout << "verify: all " << results.size() << " suites passed\n";
    return 0;
  }
  std::cout << "verify: violated:";
  for (const auto& name : failed) std::cout << " " << name;
  std::cout << "\n";
  return kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subpar: submodular maximization in few adaptive rounds"};
  app.require_subcommand(1);

  const std::vector<std::string> algorithms = subpar::AlgorithmNames();

  RunFlags run;
  auto* run_cmd = app.add_subcommand("run", "run one algorithm on an instance file");
  run_cmd->add_option("--instance", run.instance, "instance JSON file")->required();
  run_cmd->add_option("--algorithm", run.algorithm)->check(CLI::IsMember(algorithms));
  run_cmd->add_option("--epsilon", run.epsilon);
  run_cmd->add_option("--seed", run.seed);
  run_cmd->add_option("--oracle", run.oracle, "exact or sampled:K");
  run_cmd->add_option("--mode", run.mode)->check(CLI::IsMember({"theorem", "engineering"}));
  run_cmd->add_option("--sample-override", run.sample_override);
  run_cmd->add_option("--out", run.out, "report path (stdout if absent)");
  run_cmd->add_option("--format", run.format)->check(CLI::IsMember({"json", "csv"}));
  run_cmd->add_option("--threads", run.threads, "0 = hardware parallelism")
      ->check(CLI::NonNegativeNumber);

  SweepFlags sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "run a grid of generated instances");
  sweep_cmd->add_option("--algorithm", sweep.algorithm)->check(CLI::IsMember(algorithms));
  sweep_cmd->add_option("--kind", sweep.kind)
      ->check(CLI::IsMember({"cut", "coverage", "quadratic"}));
  sweep_cmd->add_option("--n-values", sweep.n_values, "comma separated");
  sweep_cmd->add_option("--epsilon-values", sweep.epsilon_values, "comma separated");
  sweep_cmd->add_option("--seeds", sweep.seeds, "seeds per cell");
  sweep_cmd->add_option("--first-seed", sweep.first_seed);
  sweep_cmd->add_option("--oracle", sweep.oracle, "exact or sampled:K");
  sweep_cmd->add_option("--large-n", sweep.large_n, "cells with n >= this use --large-oracle");
  sweep_cmd->add_option("--large-oracle", sweep.large_oracle);
  sweep_cmd->add_option("--mode", sweep.mode)->check(CLI::IsMember({"theorem", "engineering"}));
  sweep_cmd->add_option("--sample-override", sweep.sample_override);
  sweep_cmd->add_option("--out", sweep.out);
  sweep_cmd->add_option("--format", sweep.format)->check(CLI::IsMember({"json", "csv"}));
  sweep_cmd->add_option("--threads", sweep.threads)->check(CLI::NonNegativeNumber);

  VerifyFlags verify;
  auto* verify_cmd = app.add_subcommand("verify", "run the invariant suites");
  verify_cmd->add_option("--suite", verify.suites, "repeatable; default all")
      ->check(CLI::IsMember(subpar::VerifySuiteNames()));
  verify_cmd->add_option("--instance", verify.instance);
  verify_cmd->add_option("--seed", verify.seed);
  verify_cmd->add_option("--threads", verify.threads)->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*run_cmd) return DoRun(run);
    if (*sweep_cmd) return DoSweep(sweep);
    return DoVerify(verify);
  } catch (const FlagError& e) {
    std::cerr << "error: " << e.flag << ": " << e.message << "\n";
    return kExitUsage;
  } catch (const subpar::Error& e) {
    std::cerr << "error: " << subpar::ErrorCodeName(e.code()) << ": " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
