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

#ifndef SUBPAR_USM_DISCRETE_H_
#define SUBPAR_USM_DISCRETE_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "subpar/continuous_core.h"
#include "subpar/error.h"
#include "subpar/oracle.h"
#include "subpar/random.h"
#include "subpar/subset.h"

namespace subpar {

enum class DiscreteMode { kTheorem, kEngineering };

inline constexpr double kTheoremMaxEpsilon = 1.0 / 208.0;

// Parameters of the set-oracle algorithm. In engineering mode
// `sample_override` caps every sample count.
struct DiscreteParams {
  double epsilon = 0.05;
  DiscreteMode mode = DiscreteMode::kEngineering;
  std::optional<std::int64_t> sample_override;
  std::uint64_t seed = 0;

  void Validate() const {
    if (mode == DiscreteMode::kTheorem) {
      if (!(epsilon > 0.0 && epsilon <= kTheoremMaxEpsilon)) {
        throw Error(ErrorCode::kParamOutOfRange,
                    "theorem mode needs epsilon in (0, 1/208], got " +
                        std::to_string(epsilon));
      }
    } else if (!(epsilon > 0.0 && epsilon < 1.0 / 3.0)) {
      throw Error(ErrorCode::kParamOutOfRange,
                  "engineering mode needs epsilon in (0, 1/3), got " +
                      std::to_string(epsilon));
    }
    if (sample_override && *sample_override < 1) {
      throw Error(ErrorCode::kParamOutOfRange, "sample override must be >= 1");
    }
  }

  // ceil(eps^-1 ln eps^-1) iterations.
  int Ell() const {
    return static_cast<int>(std::ceil(std::log(1.0 / epsilon) / epsilon));
  }
  // ceil(200 ln(6/eps)) draws for tau.
  std::int64_t TauSamples() const {
    return Cap(std::ceil(200.0 * std::log(6.0 / epsilon)));
  }
  // ceil(eps^-2 ln(112 eps^-3 ln^2 eps^-1) / 2) draws per update grid point.
  std::int64_t UpdateSamples() const {
    const double l = std::log(1.0 / epsilon);
    return Cap(std::ceil(
        std::log(112.0 * std::pow(epsilon, -3.0) * l * l) / (2.0 * epsilon * epsilon)));
  }
  // ceil(36 eps^-2 ln(3 eps^-2)) draws per pre-process grid point.
  std::int64_t PreProcessSamples() const {
    return Cap(std::ceil(36.0 / (epsilon * epsilon) *
                         std::log(3.0 / (epsilon * epsilon))));
  }

 private:
  std::int64_t Cap(double formula) const {
    const auto m = static_cast<std::int64_t>(formula);
    if (mode == DiscreteMode::kEngineering && sample_override) {
      return std::min(m, *sample_override);
    }
    return m;
  }
};

// X subset of Y; elements of Y \ X are still undecided.
struct DiscreteState {
  Subset X;
  Subset Y;
  int iteration = 0;
};

struct DiscreteIterationTrace {
  int iteration = 0;
  int undecided_before = 0;
  int undecided_after = 0;
  // sum over Y \ X of f(u|X) - f(u|Y-u).
  double potential = 0.0;
  double gamma = 0.0;
  double step = 0.0;
  int grid_size = 0;
  bool fallback = false;
  UsageCounters usage;
};

// Candidates eps^2 ln^-1(eps^-1) (1+eps)^j, j >= 0, inside [0, 1).
inline std::vector<double> DiscreteUpdateGrid(double epsilon) {
  std::vector<double> grid;
  const double base = epsilon * epsilon / std::log(1.0 / epsilon);
  for (int j = 0;; ++j) {
    const double v = base * std::pow(1.0 + epsilon, j);
    if (!(v < 1.0)) break;
    grid.push_back(v);
  }
  return grid;
}

// Marginals and rates over the undecided elements, in the order of
// `undecided`. a_u = f(u|X), b_u = -f(u|Y-u).
struct MarginalPair {
  std::vector<ElementId> undecided;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> r;
  double potential = 0.0;
};

inline MarginalPair ComputeMarginals(SetOracle& oracle, const Subset& X,
                                     const Subset& Y) {
  MarginalPair m;
  m.undecided = Y.Minus(X).Members();
  if (m.undecided.empty()) return m;
  QueryBatch batch(oracle.n());
  batch.Reserve(4 * m.undecided.size());
  for (ElementId u : m.undecided) {
    batch.Append(X.With(u));
    batch.Append(X);
    batch.Append(Y.Without(u));
    batch.Append(Y);
  }
  const auto f = oracle.EvalBatch(batch);
  const std::size_t k = m.undecided.size();
  m.a.resize(k);
  m.b.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    m.a[i] = f[4 * i] - f[4 * i + 1];
    m.b[i] = f[4 * i + 2] - f[4 * i + 3];
    m.potential += m.a[i] + m.b[i];
  }
  const FractionalPoint rates = ComputeRates(m.a, m.b);
  m.r = rates.vector();
  return m;
}

// Appends one draw of the update estimator for step `step`: R1 ~ R(step r),
// R2 ~ R(step (1-r)) over the undecided elements, then for every undecided u
// the four sets (X u R1) + u, (X u R1) - u, (Y \ R2) + u, (Y \ R2) - u.
inline void AppendUpdateSample(QueryBatch& batch, const Subset& X, const Subset& Y,
                               std::span<const ElementId> undecided,
                               std::span<const double> r, double step, Rng& rng) {
  Subset grow = X;
  Subset shrink = Y;
  for (std::size_t i = 0; i < undecided.size(); ++i) {
    if (Uniform01(rng) < step * r[i]) grow.Insert(undecided[i]);
  }
  for (std::size_t i = 0; i < undecided.size(); ++i) {
    if (Uniform01(rng) < step * (1.0 - r[i])) shrink.Erase(undecided[i]);
  }
  for (ElementId u : undecided) {
    std::size_t q = batch.Append(grow);
    batch.Insert(q, u);
    q = batch.Append(grow);
    batch.Erase(q, u);
    q = batch.Append(shrink);
    batch.Insert(q, u);
    q = batch.Append(shrink);
    batch.Erase(q, u);
  }
}

// Value of one update draw from its 4|undecided| query results.
inline double ReduceUpdateSample(std::span<const double> f, std::span<const double> r) {
  double value = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    value += r[i] * (f[4 * i] - f[4 * i + 1]) -
             (1.0 - r[i]) * (f[4 * i + 2] - f[4 * i + 3]);
  }
  return value;
}

// Appends one draw of the pre-process estimator: for every u an independent
// pair (Rx, Ry) ~ R(step), then Rx + u, Rx - u, Ry + u, Ry - u.
inline void AppendPreProcessSample(QueryBatch& batch, double step, Rng& rng) {
  const int n = batch.n();
  Subset rx(n);
  Subset ry(n);
  for (ElementId u = 0; u < n; ++u) {
    rx = Subset(n);
    ry = Subset(n);
    for (ElementId v = 0; v < n; ++v) {
      const double draw = Uniform01(rng);
      if (draw < step) {
        rx.Insert(v);
        ry.Insert(v);
      } else if (draw >= 2.0 * step) {
        ry.Insert(v);
      }
    }
    std::size_t q = batch.Append(rx);
    batch.Insert(q, u);
    q = batch.Append(rx);
    batch.Erase(q, u);
    q = batch.Append(ry);
    batch.Insert(q, u);
    q = batch.Append(ry);
    batch.Erase(q, u);
  }
}

inline double ReducePreProcessSample(std::span<const double> f, int n) {
  double value = 0.0;
  for (int u = 0; u < n; ++u) {
    const double rx_plus = f[4 * u];
    const double rx_minus = f[4 * u + 1];
    const double ry_plus = f[4 * u + 2];
    const double ry_minus = f[4 * u + 3];
    value += (rx_plus - rx_minus) - (ry_plus - ry_minus);
  }
  return value;
}

// (X, Y) ~ R(step): each u is in both sets w.p. step, in neither w.p. step,
// and in Y only otherwise.
inline DiscreteState DrawPair(int n, double step, Rng& rng) {
  DiscreteState s{Subset(n), Subset(n), 0};
  for (ElementId u = 0; u < n; ++u) {
    const double draw = Uniform01(rng);
    if (draw < step) {
      s.X.Insert(u);
      s.Y.Insert(u);
    } else if (draw >= 2.0 * step) {
      s.Y.Insert(u);
    }
  }
  return s;
}

// One uniform per undecided u: [0, step r_u) adds u to X, [step r_u, step)
// removes it from Y, otherwise u stays undecided.
inline std::pair<Subset, Subset> RoundStep(const Subset& X, const Subset& Y,
                                           std::span<const ElementId> undecided,
                                           std::span<const double> r, double step,
                                           std::uint64_t seed, int iteration) {
  Subset next_x = X;
  Subset next_y = Y;
  for (std::size_t i = 0; i < undecided.size(); ++i) {
    Rng rng = SubStream(seed, {Tag(StreamTag::kUpdateRounding),
                               static_cast<std::uint64_t>(iteration),
                               static_cast<std::uint64_t>(undecided[i])});
    const double draw = Uniform01(rng);
    if (draw < step * r[i]) {
      next_x.Insert(undecided[i]);
    } else if (draw < step) {
      next_y.Erase(undecided[i]);
    }
  }
  return {std::move(next_x), std::move(next_y)};
}

// Mean of f(R(1/2 1_N)) over TauSamples() draws, one batch.
inline double EstimateTau(SetOracle& oracle, const DiscreteParams& params) {
  const int n = oracle.n();
  const std::int64_t m = params.TauSamples();
  QueryBatch batch(n);
  batch.Reserve(static_cast<std::size_t>(m));
  Rng rng = SubStream(params.seed, {Tag(StreamTag::kTau)});
  for (std::int64_t s = 0; s < m; ++s) {
    const std::size_t q = batch.AppendEmpty();
    for (ElementId u = 0; u < n; ++u) {
      if (Uniform01(rng) < 0.5) batch.Insert(q, u);
    }
  }
  const auto f = oracle.EvalBatch(batch);
  double sum = 0.0;
  for (double v : f) sum += v;
  return sum / static_cast<double>(m);
}

struct DiscretePreProcessResult {
  DiscreteState state;
  double step = 0.5;
  bool fallback = true;
  int grid_size = 0;
  std::vector<double> estimates;
};

inline DiscretePreProcessResult DiscretePreProcess(SetOracle& oracle, double tau,
                                                   const DiscreteParams& params) {
  params.Validate();
  if (!(tau >= 0.0)) throw Error(ErrorCode::kParamOutOfRange, "tau must be >= 0");
  const int n = oracle.n();
  const std::vector<double> grid = PreProcessGrid(params.epsilon);
  const std::int64_t m = params.PreProcessSamples();
  DiscretePreProcessResult out;
  out.grid_size = static_cast<int>(grid.size());
  const std::size_t per_sample = 4 * static_cast<std::size_t>(n);
  QueryBatch batch(n);
  batch.Reserve(grid.size() * static_cast<std::size_t>(m) * per_sample);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    Rng rng = SubStream(params.seed, {Tag(StreamTag::kPreProcessSample), j});
    for (std::int64_t s = 0; s < m; ++s) {
      AppendPreProcessSample(batch, grid[j], rng);
    }
  }
  if (!batch.empty()) {
    const auto f = oracle.EvalBatch(batch);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      double sum = 0.0;
      for (std::int64_t s = 0; s < m; ++s) {
        const std::size_t offset = (j * static_cast<std::size_t>(m) + static_cast<std::size_t>(s)) * per_sample;
        sum += ReducePreProcessSample(std::span<const double>(f).subspan(offset, per_sample), n);
      }
      out.estimates.push_back(sum / static_cast<double>(m));
    }
    for (std::size_t j = 0; j < grid.size(); ++j) {
      if (out.estimates[j] <= 30.0 * tau) {
        out.step = grid[j];
        out.fallback = false;
        break;
      }
    }
  }
  Rng rng = SubStream(params.seed, {Tag(StreamTag::kPreProcessDraw)});
  out.state = DrawPair(n, out.step, rng);
  return out;
}

inline DiscreteState DiscreteUpdate(SetOracle& oracle, const DiscreteState& state,
                                    const DiscreteParams& params,
                                    DiscreteIterationTrace* trace = nullptr) {
  if (!state.X.IsSubsetOf(state.Y)) {
    throw Error(ErrorCode::kStateInvariantViolation, "X is not a subset of Y");
  }
  const double eps = params.epsilon;
  const auto before = oracle.accounting();
  DiscreteState next{state.X, state.Y, state.iteration + 1};
  DiscreteIterationTrace t;
  t.iteration = next.iteration;

  const MarginalPair m = ComputeMarginals(oracle, state.X, state.Y);
  t.undecided_before = static_cast<int>(m.undecided.size());
  if (!m.undecided.empty()) {
    t.potential = m.potential;
    t.gamma = eps * m.potential;
    double threshold = -2.0 * t.gamma;
    for (std::size_t i = 0; i < m.undecided.size(); ++i) {
      threshold += m.a[i] * m.r[i] + m.b[i] * (1.0 - m.r[i]);
    }

    const std::vector<double> grid = DiscreteUpdateGrid(eps);
    const std::int64_t samples = params.UpdateSamples();
    const std::size_t per_sample = 4 * m.undecided.size();
    t.grid_size = static_cast<int>(grid.size());
    QueryBatch batch(oracle.n());
    batch.Reserve(grid.size() * static_cast<std::size_t>(samples) * per_sample);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      Rng rng = SubStream(params.seed, {Tag(StreamTag::kUpdateSample),
                                        static_cast<std::uint64_t>(next.iteration), j});
      for (std::int64_t s = 0; s < samples; ++s) {
        AppendUpdateSample(batch, state.X, state.Y, m.undecided, m.r, grid[j], rng);
      }
    }
    const auto f = oracle.EvalBatch(batch);
    double step = 1.0;
    t.fallback = true;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      double sum = 0.0;
      for (std::int64_t s = 0; s < samples; ++s) {
        const std::size_t offset =
            (j * static_cast<std::size_t>(samples) + static_cast<std::size_t>(s)) * per_sample;
        sum += ReduceUpdateSample(std::span<const double>(f).subspan(offset, per_sample), m.r);
      }
      if (sum / static_cast<double>(samples) <= threshold) {
        step = grid[j];
        t.fallback = false;
        break;
      }
    }
    t.step = step;
    auto [x, y] = RoundStep(state.X, state.Y, m.undecided, m.r, step, params.seed,
                            next.iteration);
    next.X = std::move(x);
    next.Y = std::move(y);
  }
  t.undecided_after = next.Y.Minus(next.X).Count();
  const auto used = oracle.accounting() - before;
  t.usage = {used.rounds, used.queries, 0, 0};
  if (trace != nullptr) *trace = t;
  return next;
}

// Z = X u {u in Y \ X : f(u|X) > 0}; one batch when Y \ X is non-empty.
inline Subset Finalize(SetOracle& oracle, const Subset& X, const Subset& Y) {
  if (!X.IsSubsetOf(Y)) {
    throw Error(ErrorCode::kStateInvariantViolation, "X is not a subset of Y");
  }
  const auto undecided = Y.Minus(X).Members();
  if (undecided.empty()) return X;
  QueryBatch batch(oracle.n());
  batch.Append(X);
  for (ElementId u : undecided) batch.Append(X.With(u));
  const auto f = oracle.EvalBatch(batch);
  Subset Z = X;
  for (std::size_t i = 0; i < undecided.size(); ++i) {
    if (f[i + 1] - f[0] > 0.0) Z.Insert(undecided[i]);
  }
  return Z;
}

struct DiscreteResult {
  double tau = 0.0;
  DiscretePreProcessResult pre;
  // states[0] is the pre-processed pair, states[i] the pair after update i.
  std::vector<DiscreteState> states;
  std::vector<DiscreteIterationTrace> trace;
  Subset solution;
  double value = 0.0;
  UsageCounters usage;

  int iterations() const { return static_cast<int>(trace.size()); }
};

inline DiscreteResult RunDiscrete(SetOracle& oracle, const DiscreteParams& params) {
  params.Validate();
  const auto start = oracle.accounting();
  DiscreteResult out;
  out.tau = EstimateTau(oracle, params);
  out.pre = DiscretePreProcess(oracle, out.tau, params);
  out.states.push_back(out.pre.state);
  const int ell = params.Ell();
  for (int i = 0; i < ell; ++i) {
    DiscreteIterationTrace t;
    out.states.push_back(DiscreteUpdate(oracle, out.states.back(), params, &t));
    out.trace.push_back(t);
  }
  out.solution = Finalize(oracle, out.states.back().X, out.states.back().Y);
  out.value = oracle.EvalSingle(out.solution);
  const auto used = oracle.accounting() - start;
  out.usage = {used.rounds, used.queries, 0, 0};
  return out;
}

}  // namespace subpar

#endif  // SUBPAR_USM_DISCRETE_H_
