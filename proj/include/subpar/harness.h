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


#ifndef SUBPAR_HARNESS_H_
#define SUBPAR_HARNESS_H_

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "subpar/baselines.h"
#include "subpar/dr_box.h"
#include "subpar/error.h"
#include "subpar/instance_io.h"
#include "subpar/instances.h"
#include "subpar/multilinear.h"
#include "subpar/oracle.h"
#include "subpar/usm_continuous.h"
#include "subpar/usm_discrete.h"

namespace subpar {

enum class Algorithm {
  kContinuous,
  kDiscrete,
  kDr,
  kDoubleGreedy,
  kDoubleGreedyDeterministic,
  kRandomHalf,
  kBruteForce,
};

inline const std::vector<std::string>& AlgorithmNames() {
  static const std::vector<std::string> names = {
      "continuous",   "discrete",    "dr",         "double-greedy",
      "double-greedy-det", "random-half", "brute-force"};
  return names;
}

inline std::string AlgorithmName(Algorithm a) {
  return AlgorithmNames()[static_cast<std::size_t>(a)];
}

inline Algorithm ParseAlgorithm(const std::string& name) {
  const auto& names = AlgorithmNames();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<Algorithm>(i);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown algorithm '" + name + "'");
}

// "exact" or "sampled:K".
struct OracleSpec {
  ExtensionMode mode = ExtensionMode::kExact;
  int samples = 1000;

  std::string ToString() const {
    return mode == ExtensionMode::kExact ? "exact" : "sampled:" + std::to_string(samples);
  }

  static OracleSpec Parse(const std::string& text) {
    if (text == "exact") return {};
    const std::string prefix = "sampled:";
    if (text.rfind(prefix, 0) == 0) {
      const std::string count = text.substr(prefix.size());
      std::size_t used = 0;
      long long k = 0;
      try {
        k = std::stoll(count, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == count.size() && !count.empty() && k >= 1 && k <= 1'000'000'000) {
        return {ExtensionMode::kSampled, static_cast<int>(k)};
      }
    }
    throw Error(ErrorCode::kInvalidArgument,
                "oracle must be 'exact' or 'sampled:K' with K >= 1, got '" + text + "'");
  }
};

struct RunConfig {
  Algorithm algorithm = Algorithm::kContinuous;
  double epsilon = 0.1;
  std::uint64_t seed = 0;
  OracleSpec oracle;
  DiscreteMode mode = DiscreteMode::kEngineering;
  std::optional<std::int64_t> sample_override;
  int threads = 0;
  // Brute-force the optimum for the ratio when n is small enough.
  bool compute_opt = true;
};

struct RunReport {
  std::string instance_id;
  std::string algorithm;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  int n = 0;
  std::string oracle;
  std::optional<std::vector<ElementId>> solution_set;
  std::optional<std::vector<double>> solution_point;
  double value = 0.0;
  std::optional<double> opt_value;
  std::optional<double> ratio;
  std::int64_t adaptive_rounds = 0;
  std::int64_t f_queries = 0;
  std::int64_t F_queries = 0;
  std::int64_t derivative_queries = 0;
  int iterations = 0;
  Json trace = Json::array();
  // Algorithm specific extras (tau, rounded solution, ...).
  Json details = Json::object();
  double wall_time_ms = 0.0;
};

inline constexpr int kReportSchema = 1;

inline Json ReportToJson(const RunReport& r) {
  Json j;
  j["schema"] = kReportSchema;
  j["instance_id"] = r.instance_id;
  j["algorithm"] = r.algorithm;
  j["epsilon"] = r.epsilon;
  j["seed"] = r.seed;
  j["n"] = r.n;
  j["oracle"] = r.oracle;
  if (r.solution_set) {
    j["solution"] = *r.solution_set;
    j["solution_kind"] = "subset";
  } else {
    j["solution"] = r.solution_point.value_or(std::vector<double>{});
    j["solution_kind"] = "point";
  }
  j["value"] = r.value;
  j["opt_value"] = r.opt_value ? Json(*r.opt_value) : Json(nullptr);
  j["ratio"] = r.ratio ? Json(*r.ratio) : Json(nullptr);
  j["adaptive_rounds"] = r.adaptive_rounds;
  j["f_queries"] = r.f_queries;
  j["F_queries"] = r.F_queries;
  j["derivative_queries"] = r.derivative_queries;
  j["iterations"] = r.iterations;
  j["trace"] = r.trace;
  j["details"] = r.details;
  j["wall_time_ms"] = r.wall_time_ms;
  return j;
}

namespace internal {

inline Json ContinuousTraceJson(const CoreRun& core) {
  Json trace = Json::array();
  for (std::size_t i = 0; i < core.trace.size(); ++i) {
    const auto& t = core.trace[i];
    trace.push_back({{"iteration", t.iteration},
                     {"delta_before", t.delta_before},
                     {"delta_after", t.delta_after},
                     {"step", t.step},
                     {"potential", t.potential},
                     {"F_x", t.Fx},
                     {"F_y", t.Fy},
                     {"grid_size", t.grid_size},
                     {"fallback", t.fallback},
                     {"rounds", t.usage.rounds},
                     {"f_queries", t.usage.f_queries},
                     {"F_queries", t.usage.F_queries},
                     {"x", core.states[i + 1].x.vector()}});
  }
  return trace;
}

inline Json CoreDetails(const CoreRun& core) {
  return {{"tau", core.tau},
          {"gamma", core.gamma},
          {"pre_step", core.pre.step},
          {"pre_fallback", core.pre.fallback},
          {"pre_grid_size", core.pre.grid_size},
          {"initial_potential", core.pre.potential}};
}

inline void SetUsage(RunReport& r, const UsageCounters& u) {
  r.adaptive_rounds = u.rounds;
  r.f_queries = u.f_queries;
  r.F_queries = u.F_queries;
  r.derivative_queries = u.derivative_queries;
}

inline std::optional<double> BruteForceOpt(const SetFunction& f) {
  if (f.n() > kMaxExhaustiveN) return std::nullopt;
  SetOracle side(f);
  return BruteForce(side).value;
}

}  // namespace internal

// Runs one algorithm on one instance. Round and query counts cover the
// algorithm only; the optimum used for the ratio is computed off the books.
inline RunReport RunAlgorithm(const Instance& instance, const std::string& instance_id,
                              const RunConfig& config) {
  const SetFunction& f = AsSetFunction(instance);
  const int n = f.n();
  RunReport r;
  r.instance_id = instance_id;
  r.algorithm = AlgorithmName(config.algorithm);
  r.epsilon = config.epsilon;
  r.seed = config.seed;
  r.n = n;

  const auto start = std::chrono::steady_clock::now();
  switch (config.algorithm) {
    case Algorithm::kContinuous: {
      SetOracle base(f, config.threads);
      MultilinearOptions options;
      options.mode = config.oracle.mode;
      options.samples = config.oracle.samples;
      options.seed = config.seed;
      MultilinearOracle oracle(base, options);
      r.oracle = config.oracle.ToString();
      const ContinuousResult res = RunContinuous(oracle, config.epsilon, config.seed);
      r.solution_point = res.solution.vector();
      r.value = res.value;
      r.iterations = res.iterations();
      internal::SetUsage(r, res.usage);
      r.details["brute_forced"] = res.brute_forced;
      r.details["rounded_solution"] = res.rounded.Members();
      r.details["rounded_value"] = res.rounded_value;
      if (!res.brute_forced) {
        r.details.update(internal::CoreDetails(res.core));
        r.trace = internal::ContinuousTraceJson(res.core);
      }
      break;
    }
    case Algorithm::kDiscrete: {
      SetOracle oracle(f, config.threads);
      DiscreteParams params;
      params.epsilon = config.epsilon;
      params.mode = config.mode;
      params.sample_override = config.sample_override;
      params.seed = config.seed;
      r.oracle = "set";
      const DiscreteResult res = RunDiscrete(oracle, params);
      r.solution_set = res.solution.Members();
      r.value = res.value;
      r.iterations = res.iterations();
      internal::SetUsage(r, res.usage);
      r.details = {{"tau", res.tau},
                   {"mode", config.mode == DiscreteMode::kTheorem ? "theorem" : "engineering"},
                   {"pre_step", res.pre.step},
                   {"pre_fallback", res.pre.fallback},
                   {"update_samples", params.UpdateSamples()},
                   {"pre_process_samples", params.PreProcessSamples()},
                   {"tau_samples", params.TauSamples()}};
      for (std::size_t i = 0; i < res.trace.size(); ++i) {
        const auto& t = res.trace[i];
        r.trace.push_back({{"iteration", t.iteration},
                           {"undecided_before", t.undecided_before},
                           {"undecided_after", t.undecided_after},
                           {"potential", t.potential},
                           {"gamma", t.gamma},
                           {"step", t.step},
                           {"grid_size", t.grid_size},
                           {"fallback", t.fallback},
                           {"rounds", t.usage.rounds},
                           {"f_queries", t.usage.f_queries},
                           {"X", res.states[i + 1].X.Members()},
                           {"Y", res.states[i + 1].Y.Members()}});
      }
      break;
    }
    case Algorithm::kDr: {
      r.oracle = "gradient";
      if (const auto* q = std::get_if<QuadraticInstance>(&instance)) {
        const RescaledProblem problem =
            RescaleToCube(QuadraticFunction(*q), BoxDomain{q->lower(), q->upper()});
        ContinuousOracle oracle(problem.cube, config.threads);
        const DrResult res = RunDr(oracle, config.epsilon);
        r.solution_point = problem.ToOriginal(res.solution.coords());
        r.value = res.value;
        r.iterations = res.iterations();
        internal::SetUsage(r, res.usage);
        r.details = internal::CoreDetails(res.core);
        r.trace = internal::ContinuousTraceJson(res.core);
      } else {
        ContinuousOracle oracle(MultilinearExtensionFunction(f), config.threads);
        const DrResult res = RunDr(oracle, config.epsilon);
        r.solution_point = res.solution.vector();
        r.value = res.value;
        r.iterations = res.iterations();
        internal::SetUsage(r, res.usage);
        r.details = internal::CoreDetails(res.core);
        r.trace = internal::ContinuousTraceJson(res.core);
      }
      break;
    }
    case Algorithm::kDoubleGreedy:
    case Algorithm::kDoubleGreedyDeterministic: {
      SetOracle oracle(f, config.threads);
      const bool randomized = config.algorithm == Algorithm::kDoubleGreedy;
      const Subset s = DoubleGreedy(oracle, randomized, config.seed);
      r.oracle = "set";
      r.solution_set = s.Members();
      r.value = oracle.EvalSingle(s);
      r.iterations = n;
      const auto acc = oracle.accounting();
      internal::SetUsage(r, {acc.rounds, acc.queries, 0, 0});
      break;
    }
    case Algorithm::kRandomHalf: {
      SetOracle oracle(f, config.threads);
      const Subset s = RandomHalf(n, config.seed);
      r.oracle = "set";
      r.solution_set = s.Members();
      r.value = oracle.EvalSingle(s);
      const auto acc = oracle.accounting();
      internal::SetUsage(r, {acc.rounds, acc.queries, 0, 0});
      break;
    }
    case Algorithm::kBruteForce: {
      SetOracle oracle(f, config.threads);
      const BruteForceResult res = BruteForce(oracle);
      r.oracle = "set";
      r.solution_set = res.best.Members();
      r.value = res.value;
      const auto acc = oracle.accounting();
      internal::SetUsage(r, {acc.rounds, acc.queries, 0, 0});
      r.opt_value = res.value;
      break;
    }
  }
  r.wall_time_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();

  if (config.compute_opt && !r.opt_value) r.opt_value = internal::BruteForceOpt(f);
  if (r.opt_value && *r.opt_value > 0.0) r.ratio = r.value / *r.opt_value;
  return r;
}

// Sweep over generated instances: one instance per (n, seed), shared by
// every epsilon.
struct SweepConfig {
  Algorithm algorithm = Algorithm::kContinuous;
  InstanceKind kind = InstanceKind::kCut;
  std::vector<int> n_values = {8, 12, 16};
  std::vector<double> epsilon_values = {0.1};
  int seeds_per_cell = 5;
  std::uint64_t first_seed = 1;
  OracleSpec oracle;
  // Cells with n >= large_n use large_oracle instead of `oracle`.
  int large_n = 20;
  OracleSpec large_oracle{ExtensionMode::kSampled, 100};
  DiscreteMode mode = DiscreteMode::kEngineering;
  std::optional<std::int64_t> sample_override;
  int threads = 0;
};

struct SweepRow {
  int n = 0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::string algorithm;
  double value = 0.0;
  std::optional<double> opt;
  std::optional<double> ratio;
  std::int64_t rounds = 0;
  std::int64_t f_queries = 0;
  std::int64_t F_queries = 0;
  int iterations = 0;
  double wall_ms = 0.0;
};

struct SweepCellSummary {
  int n = 0;
  double epsilon = 0.0;
  std::string algorithm;
  int runs = 0;
  // value, opt, ratio, rounds, f_queries, F_queries, iterations, wall_ms.
  std::vector<double> mean;
  std::vector<double> stddev;
};

inline const std::vector<std::string>& SweepColumns() {
  static const std::vector<std::string> columns = {
      "n", "epsilon", "seed", "algorithm", "value", "opt", "ratio",
      "rounds", "f_queries", "F_queries", "iterations", "wall_ms"};
  return columns;
}

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<SweepCellSummary> cells;
};

inline SweepRow ToSweepRow(const RunReport& r) {
  return {r.n, r.epsilon, r.seed, r.algorithm, r.value, r.opt_value, r.ratio,
          r.adaptive_rounds, r.f_queries, r.F_queries, r.iterations, r.wall_time_ms};
}

namespace internal {

// value, opt, ratio, rounds, f_queries, F_queries, iterations, wall_ms.
inline std::vector<std::optional<double>> RowStats(const SweepRow& row) {
  return {row.value,
          row.opt,
          row.ratio,
          static_cast<double>(row.rounds),
          static_cast<double>(row.f_queries),
          static_cast<double>(row.F_queries),
          static_cast<double>(row.iterations),
          row.wall_ms};
}

inline SweepCellSummary Summarize(const std::vector<SweepRow>& rows) {
  SweepCellSummary s;
  s.n = rows.front().n;
  s.epsilon = rows.front().epsilon;
  s.algorithm = rows.front().algorithm;
  s.runs = static_cast<int>(rows.size());
  const std::size_t width = RowStats(rows.front()).size();
  s.mean.assign(width, std::nan(""));
  s.stddev.assign(width, std::nan(""));
  for (std::size_t c = 0; c < width; ++c) {
    std::vector<double> xs;
    for (const auto& row : rows) {
      const auto v = RowStats(row)[c];
      if (v) xs.push_back(*v);
    }
    if (xs.empty()) continue;
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    s.mean[c] = mean;
    s.stddev[c] = xs.size() > 1 ? std::sqrt(var / static_cast<double>(xs.size() - 1)) : 0.0;
  }
  return s;
}

}  // namespace internal

inline std::string GeneratedInstanceId(InstanceKind kind, int n, std::uint64_t seed) {
  return KindName(kind) + "-n" + std::to_string(n) + "-s" + std::to_string(seed);
}

inline SweepResult RunSweep(const SweepConfig& config) {
  if (config.n_values.empty() || config.epsilon_values.empty() || config.seeds_per_cell < 1) {
    throw Error(ErrorCode::kInvalidArgument, "sweep needs n values, epsilon values and seeds");
  }
  SweepResult out;
  for (int n : config.n_values) {
    for (double eps : config.epsilon_values) {
      std::vector<SweepRow> cell;
      for (int s = 0; s < config.seeds_per_cell; ++s) {
        const std::uint64_t seed = config.first_seed + static_cast<std::uint64_t>(s);
        const Instance instance = GenerateRandomInstance(config.kind, n, seed);
        RunConfig run;
        run.algorithm = config.algorithm;
        run.epsilon = eps;
        run.seed = seed;
        run.oracle = n >= config.large_n ? config.large_oracle : config.oracle;
        run.mode = config.mode;
        run.sample_override = config.sample_override;
        run.threads = config.threads;
        cell.push_back(ToSweepRow(
            RunAlgorithm(instance, GeneratedInstanceId(config.kind, n, seed), run)));
      }
      out.cells.push_back(internal::Summarize(cell));
      out.rows.insert(out.rows.end(), cell.begin(), cell.end());
    }
  }
  return out;
}

namespace internal {

inline std::string CsvNumber(double v) {
  if (std::isnan(v)) return "";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

inline std::string CsvOptional(const std::optional<double>& v) {
  return v ? CsvNumber(*v) : "";
}

}  // namespace internal

inline std::string SweepRowCsv(const SweepRow& row) {
  using internal::CsvNumber;
  using internal::CsvOptional;
  std::ostringstream os;
  os << row.n << ',' << CsvNumber(row.epsilon) << ',' << row.seed << ',' << row.algorithm
     << ',' << CsvNumber(row.value) << ',' << CsvOptional(row.opt) << ','
     << CsvOptional(row.ratio) << ',' << row.rounds << ',' << row.f_queries << ','
     << row.F_queries << ',' << row.iterations << ',' << CsvNumber(row.wall_ms);
  return os.str();
}

inline std::string CsvHeader() {
  std::string header;
  for (const auto& c : SweepColumns()) {
    if (!header.empty()) header += ',';
    header += c;
  }
  return header;
}

// Run rows, then a "mean" and a "stddev" row per cell in the seed column.
inline std::string SweepToCsv(const SweepResult& sweep) {
  std::ostringstream os;
  os << CsvHeader() << '\n';
  for (const auto& row : sweep.rows) os << SweepRowCsv(row) << '\n';
  for (const auto& cell : sweep.cells) {
    for (const char* label : {"mean", "stddev"}) {
      const auto& stats = std::string(label) == "mean" ? cell.mean : cell.stddev;
      os << cell.n << ',' << internal::CsvNumber(cell.epsilon) << ',' << label << ','
         << cell.algorithm;
      for (double v : stats) os << ',' << internal::CsvNumber(v);
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace subpar

#endif  // SUBPAR_HARNESS_H_
