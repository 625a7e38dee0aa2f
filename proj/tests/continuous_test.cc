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


#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "reference.h"
#include "subpar/subpar.h"

namespace subpar {
namespace {

using testing::K2;

// Gradient oracle backed by plain callables, for driving the core through
// situations that are awkward to reach with real instances.
class FakeOracle {
 public:
  FakeOracle(int n, std::function<double(std::span<const double>)> value,
             std::function<std::vector<double>(std::span<const double>)> gradient)
      : n_(n), value_(std::move(value)), gradient_(std::move(gradient)) {}

  int dimension() const { return n_; }

  PointEvaluation Evaluate(std::span<const FractionalPoint> values,
                           std::span<const FractionalPoint> gradients) {
    PointEvaluation out;
    for (const auto& p : values) out.values.push_back(value_(p.coords()));
    for (const auto& p : gradients) out.gradients.push_back(gradient_(p.coords()));
    usage_.rounds += 1;
    return out;
  }

  UsageCounters Usage() const { return usage_; }

 private:
  int n_;
  std::function<double(std::span<const double>)> value_;
  std::function<std::vector<double>(std::span<const double>)> gradient_;
  UsageCounters usage_;
};

static_assert(GradientOracle<FakeOracle>);
static_assert(GradientOracle<MultilinearOracle>);
static_assert(GradientOracle<ContinuousOracle>);

// The K2 extension x0 (1 - x1) + x1 (1 - x0) in closed form.
FakeOracle K2ClosedForm() {
  return FakeOracle(
      2, [](std::span<const double> x) { return x[0] * (1 - x[1]) + x[1] * (1 - x[0]); },
      [](std::span<const double> x) {
        return std::vector<double>{1 - 2 * x[1], 1 - 2 * x[0]};
      });
}

TEST(ComputeRatesTest, Cases) {
  const std::vector<double> a = {1.0, 2.0, -3.0, 0.0, 0.0};
  const std::vector<double> b = {1.0, -1.0, 5.0, 0.0, 2.0};
  EXPECT_EQ(ComputeRates(a, b).vector(), (std::vector<double>{0.5, 1.0, 0.0, 0.0, 0.0}));
  EXPECT_THROW(ComputeRates(a, std::vector<double>{1.0}), Error);
}

TEST(ComputeRatesTest, RatesStayInUnitInterval) {
  testing::PropertyRng rng(2);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::vector<double> a = {rng.Uniform(-5, 5)};
    const std::vector<double> b = {rng.Uniform(-5, 5)};
    const double r = ComputeRates(a, b)[0];
    EXPECT_GE(r, 0.0);
    EXPECT_LE(r, 1.0);
  }
}

TEST(GridTest, UpdateGridSize) {
  const double eps = 0.1;
  const auto grid = UpdateGrid(eps, 1.0);
  const int expected = static_cast<int>(std::ceil(std::log(1.0 / (eps * eps)) / std::log1p(eps)));
  EXPECT_EQ(static_cast<int>(grid.size()), expected);
  EXPECT_LE(grid.size(), 1.0 + 4.0 / eps * std::log(1.0 / eps));
  EXPECT_DOUBLE_EQ(grid.front(), eps * eps);
  for (std::size_t j = 1; j < grid.size(); ++j) EXPECT_GT(grid[j], grid[j - 1]);
  EXPECT_LT(grid.back(), 1.0);
  EXPECT_TRUE(UpdateGrid(eps, eps * eps).empty());
}

TEST(GridTest, PreProcessGridSize) {
  EXPECT_EQ(PreProcessGrid(0.1), (std::vector<double>{0.1, 0.2, 0.30000000000000004, 0.4}));
  for (double eps : {0.3, 0.2, 0.15, 0.1, 0.05, 0.01}) {
    const auto grid = PreProcessGrid(eps);
    EXPECT_LE(grid.size(), static_cast<std::size_t>(std::floor(0.5 / eps)));
    EXPECT_GE(grid.front(), eps);
    EXPECT_LT(grid.back(), 0.5);
  }
}

TEST(PreProcessTest, K2PicksTheFirstGridPoint) {
  FakeOracle oracle = K2ClosedForm();
  const PreProcessResult pre = PreProcess(oracle, 0.5, 0.1);
  // Condition value 4 - 8 delta: 3.2 <= 16 tau = 8 at delta = 0.1.
  EXPECT_FALSE(pre.fallback);
  EXPECT_DOUBLE_EQ(pre.step, 0.1);
  EXPECT_NEAR(pre.potential, 3.2, 1e-12);
  EXPECT_EQ(pre.state.x.vector(), (std::vector<double>{0.1, 0.1}));
  EXPECT_EQ(pre.state.y.vector(), (std::vector<double>{0.9, 0.9}));
  EXPECT_NEAR(pre.state.delta, 0.8, 1e-15);
  EXPECT_EQ(oracle.Usage().rounds, 1);
}

TEST(PreProcessTest, FallsBackToHalf) {
  // A steep potential that exceeds 16 tau at every grid point.
  FakeOracle oracle(
      3, [](std::span<const double>) { return 0.01; },
      [](std::span<const double> x) {
        std::vector<double> g(x.size());
        for (std::size_t u = 0; u < x.size(); ++u) g[u] = 100.0 * (1.0 - 2.0 * x[u]);
        return g;
      });
  const PreProcessResult pre = PreProcess(oracle, 0.01, 0.1);
  EXPECT_TRUE(pre.fallback);
  EXPECT_EQ(pre.step, 0.5);
  EXPECT_EQ(pre.state.delta, 0.0);
  EXPECT_EQ(pre.state.x.vector(), std::vector<double>(3, 0.5));
  EXPECT_EQ(pre.state.y.vector(), std::vector<double>(3, 0.5));
}

TEST(PreProcessTest, RejectsNegativeTau) {
  FakeOracle oracle = K2ClosedForm();
  EXPECT_THROW(PreProcess(oracle, -1.0, 0.1), Error);
}

ContinuousState K2State() {
  ContinuousState s;
  s.x = FractionalPoint({0.1, 0.1});
  s.y = FractionalPoint({0.9, 0.9});
  s.delta = 0.8;
  return s;
}

TEST(UpdateTest, K2RatesAndStep) {
  // a = b = (0.8, 0.8) so r = (1/2, 1/2); the step condition reduces to
  // 1.6 - 2 delta <= 1.6 - gamma, i.e. delta >= gamma / 2.
  for (double gamma : {0.0, 0.1, 0.5}) {
    FakeOracle oracle = K2ClosedForm();
    IterationTrace t;
    const ContinuousState next = Update(oracle, K2State(), gamma, 0.1, &t);
    double expected = 0.01;
    while (expected < gamma / 2 - 1e-15) expected *= 1.1;
    if (!(expected < 0.8)) expected = 0.8;
    EXPECT_NEAR(t.step, expected, 1e-12) << "gamma " << gamma;
    EXPECT_NEAR(t.potential, 3.2, 1e-12);
    EXPECT_EQ(next.x[0], 0.1 + t.step / 2);
    EXPECT_EQ(next.y[0], 0.9 - t.step / 2);
    EXPECT_NEAR(next.delta, 0.8 - t.step, 1e-15);
    EXPECT_EQ(oracle.Usage().rounds, 2);
    EXPECT_EQ(next.iteration, 1);
  }
}

TEST(UpdateTest, ExhaustedGridFinishesInOneRound) {
  FakeOracle oracle = K2ClosedForm();
  ContinuousState s;
  s.x = FractionalPoint({0.495, 0.495});
  s.y = FractionalPoint({0.505, 0.505});
  s.delta = 0.01;
  IterationTrace t;
  const ContinuousState next = Update(oracle, s, 0.0, 0.1, &t);
  EXPECT_EQ(t.grid_size, 0);
  EXPECT_TRUE(t.fallback);
  EXPECT_EQ(next.delta, 0.0);
  EXPECT_EQ(next.x.vector(), next.y.vector());
  EXPECT_EQ(oracle.Usage().rounds, 1);
}

TEST(UpdateTest, RejectsBrokenStates) {
  FakeOracle oracle = K2ClosedForm();
  ContinuousState s = K2State();
  s.delta = 0.7;
  try {
    Update(oracle, s, 0.0, 0.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kStateInvariantViolation);
  }
  EXPECT_THROW(Update(oracle, K2State(), -0.1, 0.1), Error);
}

TEST(RunContinuousTest, RejectsEpsilonOutsideRange) {
  const CutInstance cut = GenerateCut(4, 1);
  SetOracle base(cut);
  MultilinearOracle m(base);
  for (double eps : {0.0, -0.1, 1.0 / 3.0, 0.5, std::nan("")}) {
    try {
      RunContinuous(m, eps, 0);
      ADD_FAILURE() << eps;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kParamOutOfRange);
    }
  }
}

TEST(RunContinuousTest, K2) {
  const CutInstance k2 = K2();
  SetOracle base(k2);
  MultilinearOracle m(base);
  const ContinuousResult res = RunContinuous(m, 0.05, 1);
  EXPECT_TRUE(res.brute_forced);
  EXPECT_GE(res.value, 0.45);
  // The core itself also handles n = 2.
  const CoreRun core = RunCore(m, 0.05);
  EXPECT_GE(m.ExtensionValue(core.solution()), 0.45);
  EXPECT_LE(core.iterations(), 101);
}

// Properties over random instances: trajectory invariants, iteration and
// round bounds, and the audit against a spy on the gateway.
TEST(RunContinuousTest, TrajectoryInvariants) {
  for (const Instance& inst : testing::SetInstances(10, 3, 10, 31)) {
    const SetFunction& f = AsSetFunction(inst);
    const double opt = testing::OptimumByEnumeration(f);
    for (double eps : {0.2, 0.1, 0.05}) {
      SetOracle base(f);
      std::int64_t spy = 0;
      base.SetBatchObserver([&](std::size_t) { ++spy; });
      MultilinearOracle m(base);
      const ContinuousResult res = RunContinuous(m, eps, 3);
      const CoreRun& core = res.core;
      const int ell = res.iterations();

      EXPECT_LE(ell, static_cast<int>(std::floor(5 / eps)) + 1);
      EXPECT_EQ(res.usage.rounds, spy);
      EXPECT_LE(res.usage.rounds, 2 + 1 + 2 * ell + 1);
      EXPECT_DOUBLE_EQ(core.gamma, 4 * eps * core.tau);
      EXPECT_GE(core.tau, opt / 4 - 1e-9);
      EXPECT_LE(core.tau, opt + 1e-9);
      EXPECT_GE(res.value, 0.45 * opt);
      EXPECT_EQ(core.states.back().delta, 0.0);
      EXPECT_DOUBLE_EQ(res.rounded_value, f.Evaluate(res.rounded));

      for (std::size_t i = 0; i < core.states.size(); ++i) {
        const auto& s = core.states[i];
        for (int u = 0; u < f.n(); ++u) {
          EXPECT_NEAR(s.y[u] - s.x[u], s.delta, 1e-9);
          if (i > 0) {
            EXPECT_LE(core.states[i - 1].x[u], s.x[u] + 1e-12);
            EXPECT_GE(core.states[i - 1].y[u] + 1e-12, s.y[u]);
          }
        }
      }
      for (std::size_t i = 0; i < core.trace.size(); ++i) {
        const auto& t = core.trace[i];
        if (t.delta_before > 0) {
          EXPECT_GE(t.potential, -1e-9);
        }
        if (i + 1 < core.trace.size() && t.delta_after > 0) {
          EXPECT_LE(core.trace[i + 1].potential, t.potential - core.gamma + 1e-7);
        }
      }
      if (core.states[0].delta > 0 && !core.trace.empty()) {
        EXPECT_LE(core.trace[0].potential, 16 * core.tau + 1e-7);
      }
    }
  }
}

TEST(RunContinuousTest, ReproducibleGivenSeed) {
  const CoverageInstance cov = GenerateCoverage(9, 6);
  auto run = [&](int threads) {
    SetOracle base(cov, threads);
    MultilinearOracle m(base);
    return RunContinuous(m, 0.1, 42);
  };
  const ContinuousResult a = run(1);
  const ContinuousResult b = run(4);
  EXPECT_EQ(a.solution.vector(), b.solution.vector());
  EXPECT_EQ(a.rounded, b.rounded);
  EXPECT_EQ(a.usage.rounds, b.usage.rounds);
  EXPECT_EQ(a.usage.F_queries, b.usage.F_queries);
}

TEST(RunContinuousTest, SampledOracleKeepsRoundsFlat) {
  const CutInstance cut = GenerateCut(12, 4);
  SetOracle exact_base(cut);
  MultilinearOracle exact(exact_base);
  const ContinuousResult e = RunContinuous(exact, 0.1, 1);
  SetOracle sampled_base(cut);
  MultilinearOptions options;
  options.mode = ExtensionMode::kSampled;
  options.samples = 200;
  options.seed = 1;
  MultilinearOracle sampled(sampled_base, options);
  const ContinuousResult s = RunContinuous(sampled, 0.1, 1);
  EXPECT_LE(s.iterations(), 51);
  EXPECT_LE(std::abs(s.usage.rounds - e.usage.rounds), 4);
}

}  // namespace
}  // namespace subpar
