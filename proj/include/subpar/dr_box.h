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

#ifndef SUBPAR_DR_BOX_H_
#define SUBPAR_DR_BOX_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "subpar/continuous_core.h"
#include "subpar/error.h"
#include "subpar/fractional_point.h"
#include "subpar/instances.h"
#include "subpar/multilinear.h"
#include "subpar/oracle.h"
#include "subpar/parallel.h"

namespace subpar {

// A differentiable function given by value and gradient callbacks. Both
// callbacks must be pure.
struct DrFunction {
  int n = 0;
  std::function<double(std::span<const double>)> value;
  std::function<std::vector<double>(std::span<const double>)> gradient;
};

struct BoxDomain {
  std::vector<double> lower;
  std::vector<double> upper;

  static BoxDomain Unit(int n) {
    return {std::vector<double>(static_cast<std::size_t>(n), 0.0),
            std::vector<double>(static_cast<std::size_t>(n), 1.0)};
  }

  int n() const { return static_cast<int>(lower.size()); }

  void Validate() const {
    if (lower.size() != upper.size()) {
      throw Error(ErrorCode::kInvalidArgument, "box bounds differ in length");
    }
    for (std::size_t u = 0; u < lower.size(); ++u) {
      if (!(std::isfinite(lower[u]) && std::isfinite(upper[u]) && lower[u] <= upper[u])) {
        throw Error(ErrorCode::kInvalidArgument,
                    "box needs finite lower <= upper at coordinate " + std::to_string(u));
      }
    }
  }
};

// Gateway for a continuous objective with value and gradient oracles. One
// Evaluate call is one adaptive round; each value is one F-query and each
// gradient costs n single-coordinate derivative queries.
class ContinuousOracle {
 public:
  explicit ContinuousOracle(DrFunction f, int threads = 0)
      : f_(std::move(f)), threads_(threads) {
    if (f_.n < 1 || !f_.value || !f_.gradient) {
      throw Error(ErrorCode::kInvalidArgument, "continuous oracle needs n >= 1 and callbacks");
    }
  }

  int dimension() const { return f_.n; }

  PointEvaluation Evaluate(std::span<const FractionalPoint> value_points,
                           std::span<const FractionalPoint> gradient_points) {
    if (value_points.empty() && gradient_points.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "nothing to evaluate");
    }
    for (const auto& p : value_points) CheckDimension(p);
    for (const auto& p : gradient_points) CheckDimension(p);
    PointEvaluation out;
    out.values.resize(value_points.size());
    out.gradients.resize(gradient_points.size());
    ParallelFor(value_points.size() + gradient_points.size(), threads_,
                [&](std::size_t i) {
                  if (i < value_points.size()) {
                    out.values[i] = f_.value(value_points[i].coords());
                  } else {
                    const std::size_t g = i - value_points.size();
                    out.gradients[g] = f_.gradient(gradient_points[g].coords());
                  }
                });
    std::lock_guard<std::mutex> lock(mu_);
    usage_.rounds += 1;
    usage_.F_queries += static_cast<std::int64_t>(value_points.size());
    usage_.derivative_queries +=
        static_cast<std::int64_t>(f_.n) * static_cast<std::int64_t>(gradient_points.size());
    return out;
  }

  double Value(const FractionalPoint& x) {
    const FractionalPoint pts[] = {x};
    return Evaluate(pts, {}).values[0];
  }

  UsageCounters Usage() const {
    std::lock_guard<std::mutex> lock(mu_);
    return usage_;
  }

  void ResetAccounting() {
    std::lock_guard<std::mutex> lock(mu_);
    usage_ = {};
  }

 private:
  void CheckDimension(const FractionalPoint& p) const {
    if (p.n() != f_.n) throw Error(ErrorCode::kInvalidArgument, "point dimension mismatch");
  }

  DrFunction f_;
  int threads_;
  mutable std::mutex mu_;
  UsageCounters usage_;
};

// G(x) = F(a + (b - a) x) over the free coordinates of the box; coordinates
// with a_u = b_u are pinned at a_u and removed.
struct RescaledProblem {
  DrFunction cube;
  BoxDomain box;
  std::vector<int> free_coords;

  std::vector<double> ToOriginal(std::span<const double> cube_point) const {
    std::vector<double> z = box.lower;
    for (std::size_t i = 0; i < free_coords.size(); ++i) {
      const int u = free_coords[i];
      z[u] = box.lower[u] + (box.upper[u] - box.lower[u]) * cube_point[i];
    }
    return z;
  }
};

inline RescaledProblem RescaleToCube(DrFunction f, const BoxDomain& box) {
  box.Validate();
  if (box.n() != f.n) throw Error(ErrorCode::kInvalidArgument, "box dimension mismatch");
  RescaledProblem out;
  out.box = box;
  for (int u = 0; u < f.n; ++u) {
    if (box.upper[u] > box.lower[u]) out.free_coords.push_back(u);
  }
  if (out.free_coords.empty()) {
    throw Error(ErrorCode::kDegenerateBox, "every coordinate of the box is pinned");
  }
  auto shared = std::make_shared<DrFunction>(std::move(f));
  const auto free = out.free_coords;
  const auto lower = box.lower;
  std::vector<double> width(box.n());
  for (int u = 0; u < box.n(); ++u) width[u] = box.upper[u] - box.lower[u];
  auto lift = [free, lower, width](std::span<const double> x) {
    std::vector<double> z = lower;
    for (std::size_t i = 0; i < free.size(); ++i) {
      z[free[i]] = lower[free[i]] + width[free[i]] * x[i];
    }
    return z;
  };
  out.cube.n = static_cast<int>(free.size());
  out.cube.value = [shared, lift](std::span<const double> x) {
    return shared->value(lift(x));
  };
  out.cube.gradient = [shared, lift, free, width](std::span<const double> x) {
    const std::vector<double> g = shared->gradient(lift(x));
    std::vector<double> out_grad(free.size());
    for (std::size_t i = 0; i < free.size(); ++i) out_grad[i] = width[free[i]] * g[free[i]];
    return out_grad;
  };
  return out;
}

// A quadratic instance as a function over its own box.
inline DrFunction QuadraticFunction(const QuadraticInstance& q) {
  auto shared = std::make_shared<QuadraticInstance>(q);
  DrFunction f;
  f.n = q.n();
  f.value = [shared](std::span<const double> x) { return shared->Value(x); };
  f.gradient = [shared](std::span<const double> x) { return shared->Gradient(x); };
  return f;
}

// The exact multilinear extension of `f` over [0,1]^N, tabulated once.
// Evaluates through the same interpolation routines as the exact
// MultilinearOracle, so both produce bit-identical values and gradients.
inline DrFunction MultilinearExtensionFunction(const SetFunction& set_function) {
  auto t = std::make_shared<std::vector<double>>(TabulateDirect(set_function));
  DrFunction f;
  f.n = set_function.n();
  f.value = [t](std::span<const double> x) { return table::Contract(*t, x); };
  f.gradient = [t](std::span<const double> x) { return table::Gradient(*t, x); };
  return f;
}

struct DrResult {
  CoreRun core;
  FractionalPoint solution;
  double value = 0.0;
  UsageCounters usage;

  int iterations() const { return core.iterations(); }
};

// Same loop as the set-function algorithm, returning the fractional point.
inline DrResult RunDr(ContinuousOracle& oracle, double epsilon) {
  ValidateEpsilon(epsilon);
  const UsageCounters start = oracle.Usage();
  DrResult out;
  out.core = RunCore(oracle, epsilon);
  out.solution = out.core.solution();
  out.value = oracle.Value(out.solution);
  out.usage = oracle.Usage() - start;
  return out;
}

struct GridOptimum {
  std::vector<double> point;
  double value = 0.0;
};

inline constexpr std::int64_t kDefaultGridBudget = 5'000'000;

// Exhaustive grid over [0,1]^n followed by coordinate ascent from the best
// grid point. A lower bound on the true maximum.
inline GridOptimum GridSearchOptimum(const DrFunction& f, int resolution,
                                     std::int64_t budget = kDefaultGridBudget) {
  if (resolution < 11) {
    throw Error(ErrorCode::kParamOutOfRange, "grid resolution must be >= 11");
  }
  if (f.n > 6) throw Error(ErrorCode::kTooLarge, "grid search limited to n <= 6");
  std::int64_t total = 1;
  for (int u = 0; u < f.n; ++u) {
    total *= resolution;
    if (total > budget) {
      throw Error(ErrorCode::kTooLarge, "resolution^n exceeds the grid budget");
    }
  }
  const int n = f.n;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  GridOptimum best{x, f.value(x)};
  for (std::int64_t k = 0; k < total; ++k) {
    std::int64_t rest = k;
    for (int u = 0; u < n; ++u) {
      idx[u] = static_cast<int>(rest % resolution);
      rest /= resolution;
      x[u] = static_cast<double>(idx[u]) / (resolution - 1);
    }
    const double v = f.value(x);
    if (v > best.value) best = {x, v};
  }
  // DR functions are concave along each coordinate, so golden-section search
  // finds the coordinate-wise maximum.
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    const double start = best.value;
    for (int u = 0; u < n; ++u) {
      std::vector<double> p = best.point;
      auto at = [&](double t) {
        p[u] = t;
        return f.value(p);
      };
      double lo = 0.0, hi = 1.0;
      double m1 = hi - phi * (hi - lo), m2 = lo + phi * (hi - lo);
      double v1 = at(m1), v2 = at(m2);
      for (int it = 0; it < 80; ++it) {
        if (v1 < v2) {
          lo = m1;
          m1 = m2;
          v1 = v2;
          m2 = lo + phi * (hi - lo);
          v2 = at(m2);
        } else {
          hi = m2;
          m2 = m1;
          v2 = v1;
          m1 = hi - phi * (hi - lo);
          v1 = at(m1);
        }
      }
      for (double t : {0.0, 1.0, 0.5 * (lo + hi)}) {
        const double v = at(t);
        if (v > best.value) {
          best.value = v;
          best.point = p;
        }
      }
    }
    if (best.value - start <= 1e-12) break;
  }
  return best;
}

}  // namespace subpar

#endif  // SUBPAR_DR_BOX_H_
