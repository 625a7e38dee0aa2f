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


#ifndef SUBPAR_VERIFY_H_
#define SUBPAR_VERIFY_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "subpar/baselines.h"
#include "subpar/continuous_core.h"
#include "subpar/dr_box.h"
#include "subpar/error.h"
#include "subpar/fractional_point.h"
#include "subpar/instances.h"
#include "subpar/multilinear.h"
#include "subpar/oracle.h"
#include "subpar/random.h"
#include "subpar/usm_discrete.h"

namespace subpar {

// Invariant checks over generated (or user supplied) instances. Reference
// quantities are computed here by direct enumeration over subsets, not
// through the interpolation tables the algorithms use.

struct SuiteResult {
  std::string name;
  std::int64_t checks = 0;
  std::int64_t failed = 0;
  // The first few failure messages.
  std::vector<std::string> failures;

  bool passed() const { return failed == 0; }

  void Check(bool ok, const std::function<std::string()>& message) {
    ++checks;
    if (ok) return;
    ++failed;
    if (failures.size() < kMaxMessages) failures.push_back(message());
  }

  static constexpr std::size_t kMaxMessages = 5;
};

inline const std::vector<std::string>& VerifySuiteNames() {
  static const std::vector<std::string> names = {
      "submodularity", "non-negativity", "dr",        "lovasz",
      "feige",         "tau",            "join-meet", "gradient",
      "estimator",     "state-chain",    "potential", "discrete-chain"};
  return names;
}

struct VerifyCase {
  std::string id;
  Instance instance;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  // When set, every suite runs on this instance only.
  std::optional<VerifyCase> instance;
};

namespace verify {

inline constexpr double kValueTol = 1e-9;
inline constexpr double kPotentialTol = 1e-7;

inline std::string Num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

inline std::string PointString(std::span<const double> x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i > 0) s += ",";
    s += Num(x[i]);
  }
  return s + ")";
}

// Probability that R(x) equals the set encoded by `mask`.
inline double MaskProbability(std::uint64_t mask, std::span<const double> x) {
  double p = 1.0;
  for (std::size_t u = 0; u < x.size(); ++u) {
    p *= (mask >> u) & 1 ? x[u] : 1.0 - x[u];
  }
  return p;
}

inline double Eval(const SetFunction& f, std::uint64_t mask) {
  return f.Evaluate(Subset::FromMask(f.n(), mask));
}

// F(x) = sum_S P[R(x) = S] f(S).
inline double BruteExtension(const SetFunction& f, std::span<const double> x) {
  const std::uint64_t count = std::uint64_t{1} << f.n();
  double sum = 0.0;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    sum += MaskProbability(mask, x) * Eval(f, mask);
  }
  return sum;
}

// First and second moments of f(S + u) - f(S - u), S ~ R(x).
struct Moments {
  double mean = 0.0;
  double second = 0.0;
  double Variance() const { return std::max(0.0, second - mean * mean); }
};

inline Moments BrutePartial(const SetFunction& f, std::span<const double> x, int u) {
  const std::uint64_t count = std::uint64_t{1} << f.n();
  const std::uint64_t bit = std::uint64_t{1} << u;
  Moments m;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    const double d = Eval(f, mask | bit) - Eval(f, mask & ~bit);
    const double p = MaskProbability(mask, x);
    m.mean += p * d;
    m.second += p * d * d;
  }
  // Both settings of bit u give the same difference; their weights sum to 1.
  return m;
}

inline Moments BruteValueMoments(const SetFunction& f, std::span<const double> x) {
  const std::uint64_t count = std::uint64_t{1} << f.n();
  Moments m;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    const double v = Eval(f, mask);
    const double p = MaskProbability(mask, x);
    m.mean += p * v;
    m.second += p * v * v;
  }
  return m;
}

inline std::optional<double> BruteOptimum(const SetFunction& f) {
  if (f.n() > kMaxExhaustiveN) return std::nullopt;
  const std::uint64_t count = std::uint64_t{1} << f.n();
  double best = Eval(f, 0);
  for (std::uint64_t mask = 1; mask < count; ++mask) best = std::max(best, Eval(f, mask));
  return best;
}

// Enumerated expectation of the update estimator at (X, Y, r, step):
// sum_u r_u E[f(u | R1 - u)] - (1 - r_u) E[f(u | R2 - u)], with
// R1 = X + R(step r) and R2 = Y - R(step (1 - r)) over the undecided set.
inline double DiscreteUpdateExpectation(const SetFunction& f, const Subset& X, const Subset& Y,
                                        std::span<const ElementId> undecided,
                                        std::span<const double> r, double step) {
  const std::size_t k = undecided.size();
  if (k > 16) throw Error(ErrorCode::kTooLarge, "enumeration limited to 16 undecided elements");
  std::vector<double> p_add(k);
  std::vector<double> p_remove(k);
  for (std::size_t i = 0; i < k; ++i) {
    p_add[i] = step * r[i];
    p_remove[i] = step * (1.0 - r[i]);
  }
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    Subset grow = X;
    Subset shrink = Y;
    for (std::size_t i = 0; i < k; ++i) {
      if ((mask >> i) & 1) {
        grow.Insert(undecided[i]);
        shrink.Erase(undecided[i]);
      }
    }
    const double pg = MaskProbability(mask, p_add);
    const double ps = MaskProbability(mask, p_remove);
    for (std::size_t i = 0; i < k; ++i) {
      const ElementId u = undecided[i];
      total += pg * r[i] * (f.Evaluate(grow.With(u)) - f.Evaluate(grow.Without(u)));
      total -= ps * (1.0 - r[i]) * (f.Evaluate(shrink.With(u)) - f.Evaluate(shrink.Without(u)));
    }
  }
  return total;
}

inline std::vector<double> RandomPoint(int n, Rng& rng) {
  std::vector<double> x(static_cast<std::size_t>(n));
  for (double& v : x) v = Uniform01(rng);
  return x;
}

// A continuous view of a case: the exact extension of a set instance, or a
// quadratic rescaled to its unit cube.
struct ContinuousView {
  DrFunction function;
  std::string id;
};

inline ContinuousView ViewOf(const VerifyCase& c) {
  if (const auto* q = std::get_if<QuadraticInstance>(&c.instance)) {
    return {RescaleToCube(QuadraticFunction(*q), BoxDomain{q->lower(), q->upper()}).cube, c.id};
  }
  return {MultilinearExtensionFunction(AsSetFunction(c.instance)), c.id};
}

inline bool Exhaustible(const VerifyCase& c, int limit) {
  return AsSetFunction(c.instance).n() <= limit;
}

// Runs of the shared core used by the trajectory suites.
struct CoreCase {
  std::string id;
  double epsilon = 0.0;
  CoreRun run;
  std::optional<double> opt;
};

inline std::vector<CoreCase> CoreRuns(const std::vector<VerifyCase>& cases) {
  std::vector<CoreCase> out;
  for (const auto& c : cases) {
    const SetFunction& f = AsSetFunction(c.instance);
    if (f.n() > 14 || f.n() < 1) continue;
    for (double eps : {0.2, 0.1, 0.05}) {
      CoreCase cc{c.id, eps, {}, BruteOptimum(f)};
      if (std::holds_alternative<QuadraticInstance>(c.instance)) {
        ContinuousOracle oracle(ViewOf(c).function);
        cc.run = RunCore(oracle, eps);
      } else {
        SetOracle base(f);
        MultilinearOracle oracle(base);
        cc.run = RunCore(oracle, eps);
      }
      out.push_back(std::move(cc));
    }
  }
  return out;
}

inline void Submodularity(const std::vector<VerifyCase>& cases, SuiteResult& r) {
  for (const auto& c : cases) {
    if (!Exhaustible(c, 12)) continue;
    const auto violation = FindSubmodularityViolation(AsSetFunction(c.instance));
    r.Check(!violation, [&] { return c.id + ": " + violation.value_or(""); });
  }
}

inline void NonNegativity(const std::vector<VerifyCase>& cases, SuiteResult& r) {
  for (const auto& c : cases) {
    if (!Exhaustible(c, 12)) continue;
    const auto negative = FindNegativeValue(AsSetFunction(c.instance), 0.0);
    r.Check(!negative, [&] { return c.id + ": " + negative.value_or(""); });
  }
}

// grad F(x) >= grad F(y) for x <= y.
inline void Dr(const std::vector<VerifyCase>& cases, std::uint64_t seed, SuiteResult& r) {
  for (const auto& c : cases) {
    if (!Exhaustible(c, 14)) continue;
    const ContinuousView view = ViewOf(c);
    Rng rng = SubStream(seed, {Tag(StreamTag::kVerify), 1});
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> x = RandomPoint(view.function.n, rng);
      std::vector<double> y = x;
      for (double& v : y) v += (1.0 - v) * Uniform01(rng);
      const auto gx = view.function.gradient(x);
      const auto gy = view.function.gradient(y);
      for (std::size_t u = 0; u < gx.size(); ++u) {
        r.Check(gx[u] >= gy[u] - kValueTol, [&] {
          return c.id + ": d_" + std::to_string(u) + "F" + PointString(x) + " = " +
                 Num(gx[u]) + " < " + Num(gy[u]) + " at " + PointString(y);
        });
      }
    }
  }
}

// Lovasz extension <= multilinear extension.
inline void Lovasz(const std::vector<VerifyCase>& cases, std::uint64_t seed, SuiteResult& r) {
  for (const auto& c : cases) {
    if (!Exhaustible(c, 12)) continue;
    const SetFunction& f = AsSetFunction(c.instance);
    SetOracle oracle(f);
    Rng rng = SubStream(seed, {Tag(StreamTag::kVerify), 2});
    for (int trial = 0; trial < 20; ++trial) {
      const std::vector<double> x = RandomPoint(f.n(), rng);
      const double lovasz = LovaszValue(oracle, FractionalPoint(x));
      const double multilinear = BruteExtension(f, x);
      r.Check(lovasz <= multilinear + kValueTol, [&] {
        return c.id + ": Lovasz " + Num(lovasz) + " > multilinear " + Num(multilinear) +
               " at " + PointString(x);
      });
    }
  }
}

// F(1/2 1_N) >= OPT / 4.
inline void Feige(const std::vector<VerifyCase>& cases, SuiteResult& r) {
  for (const auto& c : cases) {
    if (!Exhaustible(c, 12)) continue;
    const SetFunction& f = AsSetFunction(c.instance);
    const std::vector<double> half(static_cast<std::size_t>(f.n()), 0.5);
    const double value = BruteExtension(f, half);
    const double opt = *BruteOptimum(f);
    r.Check(value >= opt / 4.0 - kValueTol, [&] {
      return c.id + ": F(1/2) = " + Num(value) + " < OPT/4 = " + Num(opt / 4.0);
    });
  }
}

inline void Tau(const std::vector<CoreCase>& runs, SuiteResult& r) {
  for (const auto& cc : runs) {
    if (!cc.opt) continue;
    const double tau = cc.run.tau;
    r.Check(tau >= *cc.opt / 4.0 - kValueTol && tau <= *cc.opt + kValueTol, [&] {
      return cc.id + ": tau = " + Num(tau) + " outside [" + Num(*cc.opt / 4.0) + ", " +
             Num(*cc.opt) + "]";
    });
  }
}

// F(z v d1) >= (1-d) F(z) and F(z ^ (1-d)1) >= (1-d) F(z).
inline void JoinMeet(const std::vector<VerifyCase>& cases, std::uint64_t seed, SuiteResult& r) {
  for (const auto& c : cases) {
    if (!Exhaustible(c, 14)) continue;
    const ContinuousView view = ViewOf(c);
    Rng rng = SubStream(seed, {Tag(StreamTag::kVerify), 3});
    for (int trial = 0; trial < 20; ++trial) {
      const std::vector<double> z = RandomPoint(view.function.n, rng);
      const double fz = view.function.value(z);
      for (double d : {0.05, 0.25, 0.5, 0.75}) {
        std::vector<double> join = z;
        std::vector<double> meet = z;
        for (double& v : join) v = std::max(v, d);
        for (double& v : meet) v = std::min(v, 1.0 - d);
        const double fj = view.function.value(join);
        const double fm = view.function.value(meet);
        r.Check(fj >= (1.0 - d) * fz - kValueTol, [&] {
          return c.id + ": F(z v " + Num(d) + ") = " + Num(fj) + " < " + Num((1.0 - d) * fz);
        });
        r.Check(fm >= (1.0 - d) * fz - kValueTol, [&] {
          return c.id + ": F(z ^ " + Num(1.0 - d) + ") = " + Num(fm) + " < " +
                 Num((1.0 - d) * fz);
        });
      }
    }
  }
}

// Analytic gradients against central differences, relative 1e-5.
inline void Gradient(const std::vector<VerifyCase>& cases, std::uint64_t seed, SuiteResult& r) {
  constexpr double kStep = 1e-6;
  constexpr double kRelTol = 1e-5;
  for (const auto& c : cases) {
    if (!Exhaustible(c, 14)) continue;
    const ContinuousView view = ViewOf(c);
    Rng rng = SubStream(seed, {Tag(StreamTag::kVerify), 4});
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> x = RandomPoint(view.function.n, rng);
      for (double& v : x) v = 0.01 + 0.98 * v;
      const auto g = view.function.gradient(x);
      for (int u = 0; u < view.function.n; ++u) {
        std::vector<double> up = x;
        std::vector<double> down = x;
        up[u] += kStep;
        down[u] -= kStep;
        const double fd = (view.function.value(up) - view.function.value(down)) / (2 * kStep);
        const double scale = std::max(1.0, std::abs(g[u]));
        r.Check(std::abs(fd - g[u]) <= kRelTol * scale, [&] {
          return c.id + ": d_" + std::to_string(u) + " analytic " + Num(g[u]) +
                 " vs finite difference " + Num(fd);
        });
      }
    }
  }
}

// Sampled estimators against enumerated expectations, within 4 sigma.
inline void Estimator(const std::vector<VerifyCase>& cases, std::uint64_t seed, SuiteResult& r) {
  for (const auto& c : cases) {
    if (std::holds_alternative<QuadraticInstance>(c.instance)) continue;
    const SetFunction& f = AsSetFunction(c.instance);
    const int n = f.n();
    if (n > 8 || n < 1) continue;
    Rng rng = SubStream(seed, {Tag(StreamTag::kVerify), 5});

    // Sampled multilinear extension: values and partial derivatives.
    {
      constexpr int kSamples = 4000;
      SetOracle base(f);
      MultilinearOptions options;
      options.mode = ExtensionMode::kSampled;
      options.samples = kSamples;
      options.seed = seed;
      MultilinearOracle oracle(base, options);
      const std::vector<double> x = RandomPoint(n, rng);
      const FractionalPoint pts[] = {FractionalPoint(x)};
      const PointEvaluation e = oracle.Evaluate(pts, pts);
      const Moments vm = BruteValueMoments(f, x);
      const double vs = 4.0 * std::sqrt(vm.Variance() / kSamples) + kValueTol;
      r.Check(std::abs(e.values[0] - vm.mean) <= vs, [&] {
        return c.id + ": sampled F = " + Num(e.values[0]) + " vs exact " + Num(vm.mean);
      });
      for (int u = 0; u < n; ++u) {
        const Moments pm = BrutePartial(f, x, u);
        const double s = 4.0 * std::sqrt(pm.Variance() / kSamples) + kValueTol;
        r.Check(std::abs(e.gradients[0][u] - pm.mean) <= s, [&] {
          return c.id + ": sampled d_" + std::to_string(u) + "F = " +
                 Num(e.gradients[0][u]) + " vs exact " + Num(pm.mean);
        });
      }
    }

    // Discrete update estimator at a fixed state and step.
    {
      constexpr int kDraws = 4000;
      const double step = 0.3;
      Subset X(n);
      Subset Y = Subset::Full(n);
      if (n >= 4) {
        X.Insert(0);
        Y.Erase(n - 1);
      }
      SetOracle oracle(f);
      const MarginalPair m = ComputeMarginals(oracle, X, Y);
      if (m.undecided.empty()) continue;
      const std::size_t per = 4 * m.undecided.size();
      QueryBatch batch(n);
      for (int s = 0; s < kDraws; ++s) {
        AppendUpdateSample(batch, X, Y, m.undecided, m.r, step, rng);
      }
      const auto values = oracle.EvalBatch(batch);
      double sum = 0.0;
      double sq = 0.0;
      for (int s = 0; s < kDraws; ++s) {
        const double g = ReduceUpdateSample(
            std::span<const double>(values).subspan(s * per, per), m.r);
        sum += g;
        sq += g * g;
      }
      const double mean = sum / kDraws;
      const double sd = std::sqrt(std::max(0.0, sq / kDraws - mean * mean));
      const double exact = DiscreteUpdateExpectation(f, X, Y, m.undecided, m.r, step);
      r.Check(std::abs(mean - exact) <= 4.0 * sd / std::sqrt(kDraws) + kValueTol, [&] {
        return c.id + ": update estimator mean " + Num(mean) + " vs exact " + Num(exact);
      });
    }

    // Discrete pre-process estimator: sum_u d_uF(d 1) - d_uF((1-d) 1).
    {
      constexpr int kDraws = 4000;
      const double step = 0.2;
      SetOracle oracle(f);
      QueryBatch batch(n);
      for (int s = 0; s < kDraws; ++s) AppendPreProcessSample(batch, step, rng);
      const auto values = oracle.EvalBatch(batch);
      const std::size_t per = 4 * static_cast<std::size_t>(n);
      double sum = 0.0;
      double sq = 0.0;
      for (int s = 0; s < kDraws; ++s) {
        const double g =
            ReducePreProcessSample(std::span<const double>(values).subspan(s * per, per), n);
        sum += g;
        sq += g * g;
      }
      const double mean = sum / kDraws;
      const double sd = std::sqrt(std::max(0.0, sq / kDraws - mean * mean));
      const std::vector<double> low(static_cast<std::size_t>(n), step);
      const std::vector<double> high(static_cast<std::size_t>(n), 1.0 - step);
      double exact = 0.0;
      for (int u = 0; u < n; ++u) {
        exact += BrutePartial(f, low, u).mean - BrutePartial(f, high, u).mean;
      }
      r.Check(std::abs(mean - exact) <= 4.0 * sd / std::sqrt(kDraws) + kValueTol, [&] {
        return c.id + ": pre-process estimator mean " + Num(mean) + " vs exact " + Num(exact);
      });
    }
  }
}

// x <= y, y - x = delta 1, x non-decreasing and y non-increasing.
inline void StateChain(const std::vector<CoreCase>& runs, SuiteResult& r) {
  for (const auto& cc : runs) {
    const auto& states = cc.run.states;
    for (std::size_t i = 0; i < states.size(); ++i) {
      const auto& s = states[i];
      for (int u = 0; u < s.x.n(); ++u) {
        r.Check(s.x[u] <= s.y[u] + kValueTol &&
                    std::abs(s.y[u] - s.x[u] - s.delta) <= kValueTol,
                [&] {
                  return cc.id + " eps=" + Num(cc.epsilon) + " iteration " +
                         std::to_string(i) + ": x_u=" + Num(s.x[u]) + " y_u=" +
                         Num(s.y[u]) + " delta=" + Num(s.delta);
                });
        if (i > 0) {
          const auto& p = states[i - 1];
          r.Check(p.x[u] <= s.x[u] + kValueTol && s.y[u] <= p.y[u] + kValueTol, [&] {
            return cc.id + " eps=" + Num(cc.epsilon) + " iteration " + std::to_string(i) +
                   ": chain broken at coordinate " + std::to_string(u);
          });
        }
      }
    }
  }
}

// Phi(i+1) <= Phi(i) - gamma while delta stays positive; Phi(0) <= 16 tau.
inline void Potential(const std::vector<CoreCase>& runs, SuiteResult& r) {
  for (const auto& cc : runs) {
    const auto& trace = cc.run.trace;
    const auto& states = cc.run.states;
    if (!trace.empty() && states[0].delta > 0.0) {
      r.Check(trace[0].potential <= 16.0 * cc.run.tau + kPotentialTol, [&] {
        return cc.id + " eps=" + Num(cc.epsilon) + ": Phi(0) = " + Num(trace[0].potential) +
               " > 16 tau = " + Num(16.0 * cc.run.tau);
      });
    }
    for (std::size_t i = 0; i + 1 < trace.size(); ++i) {
      if (!(states[i + 1].delta > 0.0)) continue;
      r.Check(trace[i + 1].potential <= trace[i].potential - cc.run.gamma + kPotentialTol, [&] {
        return cc.id + " eps=" + Num(cc.epsilon) + " iteration " + std::to_string(i + 1) +
               ": Phi = " + Num(trace[i + 1].potential) + " > " + Num(trace[i].potential) +
               " - gamma (" + Num(cc.run.gamma) + ")";
      });
    }
  }
}

// X_i subset X_{i+1} subset Y_{i+1} subset Y_i, and exactly ell updates.
inline void DiscreteChain(const std::vector<VerifyCase>& cases, std::uint64_t seed,
                          SuiteResult& r) {
  for (const auto& c : cases) {
    const SetFunction& f = AsSetFunction(c.instance);
    if (f.n() > 12 || std::holds_alternative<QuadraticInstance>(c.instance)) continue;
    for (std::uint64_t s = 0; s < 3; ++s) {
      DiscreteParams params;
      params.epsilon = 0.1;
      params.sample_override = 30;
      params.seed = seed + s;
      SetOracle oracle(f);
      const DiscreteResult res = RunDiscrete(oracle, params);
      r.Check(res.iterations() == params.Ell(), [&] {
        return c.id + ": " + std::to_string(res.iterations()) + " updates, expected " +
               std::to_string(params.Ell());
      });
      for (std::size_t i = 0; i < res.states.size(); ++i) {
        const auto& st = res.states[i];
        r.Check(st.X.IsSubsetOf(st.Y), [&] {
          return c.id + " iteration " + std::to_string(i) + ": X not a subset of Y";
        });
        if (i > 0) {
          const auto& p = res.states[i - 1];
          r.Check(p.X.IsSubsetOf(st.X) && st.Y.IsSubsetOf(p.Y), [&] {
            return c.id + " iteration " + std::to_string(i) + ": chain broken";
          });
        }
      }
      r.Check(res.states.back().X.IsSubsetOf(res.solution) &&
                  res.solution.IsSubsetOf(res.states.back().Y),
              [&] { return c.id + ": final set outside [X, Y]"; });
    }
  }
}

}  // namespace verify

// The instances verify runs on when none is given.
inline std::vector<VerifyCase> DefaultVerifyCases(std::uint64_t seed) {
  std::vector<VerifyCase> cases;
  for (std::uint64_t s = seed; s < seed + 2; ++s) {
    for (int n : {4, 6, 8, 12}) {
      cases.push_back({"cut-n" + std::to_string(n) + "-s" + std::to_string(s), GenerateCut(n, s)});
      cases.push_back({"coverage-n" + std::to_string(n) + "-s" + std::to_string(s),
                       GenerateCoverage(n, s)});
    }
    for (int n : {2, 3, 5}) {
      cases.push_back({"quadratic-n" + std::to_string(n) + "-s" + std::to_string(s),
                       GenerateQuadratic(n, s)});
    }
  }
  return cases;
}

// Runs the named suites (all when `suites` is empty). A suite that throws
// is reported as failed with the exception text.
inline std::vector<SuiteResult> RunVerify(const std::vector<std::string>& suites,
                                          const VerifyOptions& options) {
  const auto& known = VerifySuiteNames();
  for (const auto& s : suites) {
    if (std::find(known.begin(), known.end(), s) == known.end()) {
      throw Error(ErrorCode::kInvalidArgument, "unknown suite '" + s + "'");
    }
  }
  const std::vector<std::string>& selected = suites.empty() ? known : suites;
  const std::vector<VerifyCase> cases =
      options.instance ? std::vector<VerifyCase>{*options.instance}
                       : DefaultVerifyCases(options.seed);
  std::optional<std::vector<verify::CoreCase>> runs;
  auto core_runs = [&]() -> const std::vector<verify::CoreCase>& {
    if (!runs) runs = verify::CoreRuns(cases);
    return *runs;
  };

  std::vector<SuiteResult> out;
  for (const auto& name : known) {
    if (std::find(selected.begin(), selected.end(), name) == selected.end()) continue;
    SuiteResult r;
    r.name = name;
    try {
      if (name == "submodularity") verify::Submodularity(cases, r);
      if (name == "non-negativity") verify::NonNegativity(cases, r);
      if (name == "dr") verify::Dr(cases, options.seed, r);
      if (name == "lovasz") verify::Lovasz(cases, options.seed, r);
      if (name == "feige") verify::Feige(cases, r);
      if (name == "tau") verify::Tau(core_runs(), r);
      if (name == "join-meet") verify::JoinMeet(cases, options.seed, r);
      if (name == "gradient") verify::Gradient(cases, options.seed, r);
      if (name == "estimator") verify::Estimator(cases, options.seed, r);
      if (name == "state-chain") verify::StateChain(core_runs(), r);
      if (name == "potential") verify::Potential(core_runs(), r);
      if (name == "discrete-chain") verify::DiscreteChain(cases, options.seed, r);
    } catch (const std::exception& e) {
      r.failed += 1;
      r.failures.push_back(std::string("error: ") + e.what());
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace subpar

#endif  // SUBPAR_VERIFY_H_
