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

#ifndef SUBPAR_CONTINUOUS_CORE_H_
#define SUBPAR_CONTINUOUS_CORE_H_

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "subpar/error.h"
#include "subpar/fractional_point.h"
#include "subpar/multilinear.h"
#include "subpar/oracle.h"

namespace subpar {

// An oracle for a continuous objective over [0,1]^N. Each Evaluate call is
// one adaptive round returning F at `value_points` and the gradient of F at
// `gradient_points`.
template <class O>
concept GradientOracle = requires(O& o, std::span<const FractionalPoint> pts) {
  { o.dimension() } -> std::convertible_to<int>;
  { o.Evaluate(pts, pts) } -> std::same_as<PointEvaluation>;
  { o.Usage() } -> std::same_as<UsageCounters>;
};

inline void ValidateEpsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0 / 3.0)) {
    throw Error(ErrorCode::kParamOutOfRange,
                "epsilon must lie in (0, 1/3), got " + std::to_string(epsilon));
  }
}

// State threaded through the iterations: y - x = delta * 1_N.
struct ContinuousState {
  FractionalPoint x;
  FractionalPoint y;
  double delta = 0.0;
  int iteration = 0;
};

struct IterationTrace {
  int iteration = 0;
  double delta_before = 0.0;
  double delta_after = 0.0;
  double step = 0.0;
  // 1_N . [grad F(x) - grad F(y)] at the state the update started from.
  double potential = 0.0;
  double Fx = 0.0;
  double Fy = 0.0;
  int grid_size = 0;
  bool fallback = false;
  UsageCounters usage;
};

// Basic rates: r_u = a_u / (a_u + b_u) when both are positive, 1 when only
// a_u is positive, 0 otherwise.
inline FractionalPoint ComputeRates(std::span<const double> a,
                                    std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kInvalidArgument, "rate vectors differ in length");
  }
  std::vector<double> r(a.size());
  for (std::size_t u = 0; u < a.size(); ++u) {
    if (a[u] > 0.0 && b[u] > 0.0) {
      r[u] = a[u] / (a[u] + b[u]);
    } else if (a[u] > 0.0) {
      r[u] = 1.0;
    } else {
      r[u] = 0.0;
    }
  }
  return FractionalPoint(std::move(r));
}

// Step candidates eps^2 (1+eps)^j, j >= 0, strictly below delta.
inline std::vector<double> UpdateGrid(double epsilon, double delta) {
  std::vector<double> grid;
  const double base = epsilon * epsilon;
  for (int j = 0;; ++j) {
    const double v = base * std::pow(1.0 + epsilon, j);
    if (!(v < delta)) break;
    grid.push_back(v);
  }
  return grid;
}

// Candidates eps * j, j >= 1, inside [eps, 1/2).
inline std::vector<double> PreProcessGrid(double epsilon) {
  std::vector<double> grid;
  for (int j = 1;; ++j) {
    const double v = epsilon * j;
    if (!(v < 0.5)) break;
    grid.push_back(v);
  }
  return grid;
}

inline double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double SumDifference(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] - b[i];
  return s;
}

struct PreProcessResult {
  ContinuousState state;
  double step = 0.5;
  int grid_size = 0;
  bool fallback = true;
  // Condition value 1_N . [grad F(step 1) - grad F((1-step) 1)] at the
  // chosen step; unset (0) on fallback.
  double potential = 0.0;
};

// Smallest eps*j in [eps, 1/2) whose potential is at most 16 tau, else 1/2;
// all candidates are evaluated in one round.
template <GradientOracle O>
PreProcessResult PreProcess(O& oracle, double tau, double epsilon) {
  ValidateEpsilon(epsilon);
  if (!(tau >= 0.0)) throw Error(ErrorCode::kParamOutOfRange, "tau must be >= 0");
  const int n = oracle.dimension();
  const std::vector<double> grid = PreProcessGrid(epsilon);
  std::vector<FractionalPoint> points;
  points.reserve(2 * grid.size());
  for (double d : grid) {
    points.push_back(FractionalPoint::Constant(n, d));
    points.push_back(FractionalPoint::Constant(n, 1.0 - d));
  }
  PreProcessResult out;
  out.grid_size = static_cast<int>(grid.size());
  if (!points.empty()) {
    const auto eval = oracle.Evaluate({}, points);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double potential =
          SumDifference(eval.gradients[2 * j], eval.gradients[2 * j + 1]);
      if (potential <= 16.0 * tau) {
        out.step = grid[j];
        out.fallback = false;
        out.potential = potential;
        break;
      }
    }
  }
  out.state.x = FractionalPoint::Constant(n, out.step);
  out.state.y = FractionalPoint::Constant(n, 1.0 - out.step);
  out.state.delta = out.fallback ? 0.0 : 1.0 - 2.0 * out.step;
  if (out.fallback) out.state.y = out.state.x;
  out.state.iteration = 0;
  return out;
}

inline void CheckState(const ContinuousState& s) {
  if (s.x.n() != s.y.n()) {
    throw Error(ErrorCode::kStateInvariantViolation, "x and y differ in dimension");
  }
  if (!(s.delta > 0.0 && s.delta <= 1.0)) {
    throw Error(ErrorCode::kStateInvariantViolation,
                "delta must lie in (0, 1], got " + std::to_string(s.delta));
  }
  for (int u = 0; u < s.x.n(); ++u) {
    if (std::abs(s.y[u] - s.x[u] - s.delta) > 1e-9) {
      throw Error(ErrorCode::kStateInvariantViolation,
                  "y - x != delta at coordinate " + std::to_string(u));
    }
  }
}

// One contraction step of (x, y). Round 1 evaluates F and grad F at x and y;
// round 2 evaluates the gradients at every candidate step.
template <GradientOracle O>
ContinuousState Update(O& oracle, const ContinuousState& state, double gamma,
                       double epsilon, IterationTrace* trace = nullptr) {
  CheckState(state);
  if (!(gamma >= 0.0)) throw Error(ErrorCode::kParamOutOfRange, "gamma must be >= 0");
  const int n = oracle.dimension();
  const UsageCounters usage_before = oracle.Usage();

  const FractionalPoint xy[] = {state.x, state.y};
  const PointEvaluation first = oracle.Evaluate(xy, xy);
  const std::vector<double>& a = first.gradients[0];
  std::vector<double> b = first.gradients[1];
  for (double& v : b) v = -v;
  const FractionalPoint r = ComputeRates(a, b);

  std::vector<double> one_minus_r(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u) one_minus_r[u] = 1.0 - r[u];
  const double threshold = Dot(a, r.coords()) + Dot(b, one_minus_r) - gamma;

  auto advance_x = [&](double d) {
    std::vector<double> c(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u) c[u] = state.x[u] + d * r[u];
    return FractionalPoint(std::move(c));
  };
  auto retreat_y = [&](double d) {
    std::vector<double> c(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u) c[u] = state.y[u] - d * one_minus_r[u];
    return FractionalPoint(std::move(c));
  };

  const std::vector<double> grid = UpdateGrid(epsilon, state.delta);
  double step = state.delta;
  bool fallback = true;
  if (!grid.empty()) {
    std::vector<FractionalPoint> points;
    points.reserve(2 * grid.size());
    for (double d : grid) {
      points.push_back(advance_x(d));
      points.push_back(retreat_y(d));
    }
    const PointEvaluation sweep = oracle.Evaluate({}, points);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double lhs = Dot(r.coords(), sweep.gradients[2 * j]) -
                         Dot(one_minus_r, sweep.gradients[2 * j + 1]);
      if (lhs <= threshold) {
        step = grid[j];
        fallback = false;
        break;
      }
    }
  }

  ContinuousState next;
  next.x = advance_x(step);
  next.delta = fallback ? 0.0 : std::clamp(state.delta - step, 0.0, 1.0);
  next.y = next.delta == 0.0 ? next.x : retreat_y(step);
  next.iteration = state.iteration + 1;

  if (trace != nullptr) {
    trace->iteration = next.iteration;
    trace->delta_before = state.delta;
    trace->delta_after = next.delta;
    trace->step = step;
    trace->potential = SumDifference(a, first.gradients[1]);
    trace->Fx = first.values[0];
    trace->Fy = first.values[1];
    trace->grid_size = static_cast<int>(grid.size());
    trace->fallback = fallback;
    trace->usage = oracle.Usage() - usage_before;
  }
  return next;
}

struct CoreRun {
  double epsilon = 0.0;
  double tau = 0.0;
  double gamma = 0.0;
  PreProcessResult pre;
  // states[0] is the pre-processed state; states[i] the state after the
  // i-th update.
  std::vector<ContinuousState> states;
  std::vector<IterationTrace> trace;

  int iterations() const { return static_cast<int>(trace.size()); }
  const FractionalPoint& solution() const { return states.back().x; }
};

// tau = F(1/2 1_N), gamma = 4 eps tau, pre-process, then update while
// delta > 0.
template <GradientOracle O>
CoreRun RunCore(O& oracle, double epsilon) {
  ValidateEpsilon(epsilon);
  const int n = oracle.dimension();
  CoreRun run;
  run.epsilon = epsilon;
  const FractionalPoint half[] = {FractionalPoint::Constant(n, 0.5)};
  run.tau = oracle.Evaluate(half, {}).values[0];
  run.gamma = 4.0 * epsilon * run.tau;
  run.pre = PreProcess(oracle, run.tau, epsilon);
  run.states.push_back(run.pre.state);
  // The step never drops below eps^2 unless it finishes the run.
  const int hard_cap = static_cast<int>(std::ceil(1.0 / (epsilon * epsilon))) + 2;
  while (run.states.back().delta > 0.0) {
    if (run.iterations() > hard_cap) {
      throw Error(ErrorCode::kStateInvariantViolation, "update loop failed to terminate");
    }
    IterationTrace t;
    run.states.push_back(Update(oracle, run.states.back(), run.gamma, epsilon, &t));
    run.trace.push_back(t);
  }
  return run;
}

}  // namespace subpar

#endif  // SUBPAR_CONTINUOUS_CORE_H_
