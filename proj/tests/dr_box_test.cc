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
#include <vector>

#include <gtest/gtest.h>

#include "reference.h"
#include "subpar/subpar.h"

namespace subpar {
namespace {

// F(x) = x0 + x1 - c x0 x1.
DrFunction Bilinear(double c) {
  DrFunction f;
  f.n = 2;
  f.value = [c](std::span<const double> x) { return x[0] + x[1] - c * x[0] * x[1]; };
  f.gradient = [c](std::span<const double> x) {
    return std::vector<double>{1 - c * x[1], 1 - c * x[0]};
  };
  return f;
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInvalidArgument;
}

TEST(RescaleTest, UnitBoxIsIdentity) {
  const DrFunction f = Bilinear(1.0);
  const RescaledProblem p = RescaleToCube(f, BoxDomain::Unit(2));
  testing::PropertyRng rng(1);
  for (int t = 0; t < 50; ++t) {
    const auto x = rng.Point(2);
    EXPECT_EQ(p.cube.value(x), f.value(x));
    EXPECT_EQ(p.cube.gradient(x), f.gradient(x));
    EXPECT_EQ(p.ToOriginal(x), x);
  }
}

TEST(RescaleTest, ChainRule) {
  const RescaledProblem p = RescaleToCube(Bilinear(0.5), BoxDomain{{0, 0}, {2, 2}});
  const std::vector<double> half = {0.5, 0.5};
  EXPECT_EQ(p.cube.gradient(half), (std::vector<double>{1.0, 1.0}));
  EXPECT_DOUBLE_EQ(p.cube.value(half), 1.5);
  EXPECT_EQ(p.ToOriginal(half), (std::vector<double>{1.0, 1.0}));
}

TEST(RescaleTest, FiniteDifferences) {
  const QuadraticInstance q = GenerateQuadratic(4, 9);
  const BoxDomain box{q.lower(), q.upper()};
  const RescaledProblem p = RescaleToCube(QuadraticFunction(q), box);
  testing::PropertyRng rng(2);
  const double h = 1e-6;
  for (int t = 0; t < 20; ++t) {
    auto x = rng.Point(p.cube.n);
    for (double& v : x) v = 0.1 + 0.8 * v;
    const auto g = p.cube.gradient(x);
    for (int u = 0; u < p.cube.n; ++u) {
      auto hi = x, lo = x;
      hi[u] += h;
      lo[u] -= h;
      EXPECT_NEAR(g[u], (p.cube.value(hi) - p.cube.value(lo)) / (2 * h), 1e-5);
    }
  }
}

TEST(RescaleTest, PinnedCoordinatesAreRemoved) {
  const RescaledProblem p = RescaleToCube(Bilinear(1.0), BoxDomain{{0, 0.5}, {1, 0.5}});
  EXPECT_EQ(p.cube.n, 1);
  EXPECT_EQ(p.free_coords, (std::vector<int>{0}));
  const std::vector<double> one = {1.0};
  EXPECT_DOUBLE_EQ(p.cube.value(one), 1.0);
  EXPECT_EQ(p.ToOriginal(one), (std::vector<double>{1.0, 0.5}));
  EXPECT_EQ(CodeOf([] { RescaleToCube(Bilinear(1.0), BoxDomain{{0.3, 0.5}, {0.3, 0.5}}); }),
            ErrorCode::kDegenerateBox);
  EXPECT_THROW(RescaleToCube(Bilinear(1.0), BoxDomain{{1, 0}, {0, 1}}), Error);
  EXPECT_THROW(RescaleToCube(Bilinear(1.0), BoxDomain::Unit(3)), Error);
}

TEST(ContinuousOracleTest, Accounting) {
  ContinuousOracle oracle(Bilinear(1.0));
  const FractionalPoint pts[] = {FractionalPoint({0.0, 0.0}), FractionalPoint({1.0, 0.0}),
                                 FractionalPoint({0.5, 0.5})};
  const PointEvaluation e = oracle.Evaluate(std::span(pts, 2), std::span(pts + 2, 1));
  EXPECT_EQ(e.values, (std::vector<double>{0.0, 1.0}));
  EXPECT_EQ(e.gradients[0], (std::vector<double>{0.5, 0.5}));
  const UsageCounters u = oracle.Usage();
  EXPECT_EQ(u.rounds, 1);
  EXPECT_EQ(u.F_queries, 2);
  EXPECT_EQ(u.derivative_queries, 2);
  EXPECT_EQ(u.f_queries, 0);
  EXPECT_THROW(oracle.Evaluate({}, {}), Error);
  const FractionalPoint wrong[] = {FractionalPoint({0.5})};
  EXPECT_THROW(oracle.Evaluate(wrong, {}), Error);
  oracle.ResetAccounting();
  EXPECT_EQ(oracle.Usage().rounds, 0);
  EXPECT_THROW(ContinuousOracle(DrFunction{}), Error);
}

TEST(RunDrTest, Bilinear) {
  ContinuousOracle oracle(Bilinear(1.0));
  const DrResult res = RunDr(oracle, 0.05);
  // The maximum is 1 on the boundary x0 + x1 - x0 x1 = 1.
  EXPECT_GE(res.value, 0.45);
  EXPECT_LE(res.value, 1.0 + 1e-12);
  EXPECT_GE(res.core.tau, 0.25);
  EXPECT_LE(res.core.tau, 1.0);
  EXPECT_LE(res.iterations(), 101);
  EXPECT_LE(res.usage.rounds, 2 * res.iterations() + 3);
  EXPECT_EQ(res.usage.rounds, oracle.Usage().rounds);
  EXPECT_THROW(RunDr(oracle, 0.4), Error);
}

TEST(RunDrTest, RandomQuadratics) {
  for (int i = 0; i < 8; ++i) {
    const QuadraticInstance q = GenerateQuadratic(2 + i % 3, 50 + i);
    const RescaledProblem p = RescaleToCube(QuadraticFunction(q), BoxDomain{q.lower(), q.upper()});
    ContinuousOracle oracle(p.cube);
    const DrResult res = RunDr(oracle, 0.1);
    const GridOptimum best = GridSearchOptimum(p.cube, 21);
    EXPECT_GE(res.value, 0.45 * best.value) << i;
    EXPECT_LE(res.iterations(), 51);
    for (int u = 0; u < p.cube.n; ++u) {
      EXPECT_GE(res.solution[u], 0.0);
      EXPECT_LE(res.solution[u], 1.0);
    }
    const auto z = p.ToOriginal(res.solution.coords());
    EXPECT_NEAR(q.Value(z), res.value, 1e-9);
  }
}

TEST(GridSearchTest, Examples) {
  const GridOptimum best = GridSearchOptimum(Bilinear(1.0), 11);
  EXPECT_NEAR(best.value, 1.0, 1e-12);

  DrFunction constant;
  constant.n = 3;
  constant.value = [](std::span<const double>) { return 0.7; };
  constant.gradient = [](std::span<const double>) { return std::vector<double>(3, 0.0); };
  EXPECT_DOUBLE_EQ(GridSearchOptimum(constant, 11).value, 0.7);

  // Interior maximum of a concave coordinate: 2x - 2x^2 peaks at 1/2 with 1/2.
  DrFunction peak;
  peak.n = 1;
  peak.value = [](std::span<const double> x) { return 2 * x[0] - 2 * x[0] * x[0]; };
  peak.gradient = [](std::span<const double> x) { return std::vector<double>{2 - 4 * x[0]}; };
  EXPECT_NEAR(GridSearchOptimum(peak, 12).point[0], 0.5, 1e-6);
}

TEST(GridSearchTest, Limits) {
  EXPECT_EQ(CodeOf([] { GridSearchOptimum(Bilinear(1.0), 10); }), ErrorCode::kParamOutOfRange);
  DrFunction big;
  big.n = 7;
  big.value = [](std::span<const double>) { return 0.0; };
  big.gradient = [](std::span<const double>) { return std::vector<double>(7, 0.0); };
  EXPECT_EQ(CodeOf([&] { GridSearchOptimum(big, 11); }), ErrorCode::kTooLarge);
  big.n = 5;
  EXPECT_EQ(CodeOf([&] { GridSearchOptimum(big, 100); }), ErrorCode::kTooLarge);
}

TEST(MultilinearExtensionFunctionTest, MatchesEnumeration) {
  for (const Instance& inst : testing::SetInstances(4, 2, 7, 3)) {
    const SetFunction& f = AsSetFunction(inst);
    const DrFunction F = MultilinearExtensionFunction(f);
    testing::PropertyRng rng(f.n());
    for (int t = 0; t < 10; ++t) {
      const auto x = rng.Point(f.n());
      EXPECT_NEAR(F.value(x), testing::ExtensionByEnumeration(f, x), 1e-9);
      const auto g = F.gradient(x);
      const auto ref = testing::GradientByEnumeration(f, x);
      for (int u = 0; u < f.n(); ++u) EXPECT_NEAR(g[u], ref[u], 1e-9);
    }
  }
}

}  // namespace
}  // namespace subpar
