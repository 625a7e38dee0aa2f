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

#ifndef SUBPAR_INSTANCES_H_
#define SUBPAR_INSTANCES_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "subpar/error.h"
#include "subpar/oracle.h"
#include "subpar/random.h"
#include "subpar/subset.h"

namespace subpar {

// Exhaustive checks are only offered up to this size.
inline constexpr int kMaxExhaustiveN = 20;

// f over every subset, indexed by the bit mask of the subset. Evaluated
// directly, outside any gateway; for certification only.
inline std::vector<double> TabulateDirect(const SetFunction& f) {
  const int n = f.n();
  if (n > kMaxExhaustiveN) {
    throw Error(ErrorCode::kTooLarge,
                "tabulation limited to n <= " + std::to_string(kMaxExhaustiveN));
  }
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<double> table(count);
  std::uint64_t word = 0;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    word = mask;
    table[mask] = f.Evaluate(SubsetView(std::span<const std::uint64_t>(&word, WordsFor(n)), n));
  }
  return table;
}

// Returns a description of the first subset with f(S) < -tol, if any.
inline std::optional<std::string> FindNegativeValue(const SetFunction& f,
                                                    double tol = 0.0) {
  const auto table = TabulateDirect(f);
  for (std::uint64_t mask = 0; mask < table.size(); ++mask) {
    if (table[mask] < -tol) {
      return "f(" + Subset::FromMask(f.n(), mask).ToString() +
             ") = " + std::to_string(table[mask]) + " < 0";
    }
  }
  return std::nullopt;
}

// Checks f(S+u) - f(S) >= f(T+u) - f(T) for all S subset of T, u not in T.
inline std::optional<std::string> FindSubmodularityViolation(
    const SetFunction& f, double tol = 1e-9) {
  const int n = f.n();
  const auto table = TabulateDirect(f);
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t t = 0; t <= full; ++t) {
    const std::uint64_t outside = full & ~t;
    // Enumerate all submasks s of t (including t itself and 0).
    std::uint64_t s = t;
    while (true) {
      std::uint64_t rest = outside;
      while (rest != 0) {
        const std::uint64_t bit = rest & (~rest + 1);
        rest &= rest - 1;
        const double gain_s = table[s | bit] - table[s];
        const double gain_t = table[t | bit] - table[t];
        if (gain_s < gain_t - tol) {
          return "f(u|S) < f(u|T) for S=" + Subset::FromMask(n, s).ToString() +
                 " T=" + Subset::FromMask(n, t).ToString() +
                 " u=" + std::to_string(std::countr_zero(bit));
        }
      }
      if (s == 0) break;
      s = (s - 1) & t;
    }
  }
  return std::nullopt;
}

struct CutEdge {
  ElementId u;
  ElementId v;
  double w;
};

// Weighted cut function f(S) = sum of w over edges with exactly one endpoint
// in S. Symmetric, non-negative, submodular.
class CutInstance : public SetFunction {
 public:
  CutInstance(int n, std::vector<CutEdge> edges)
      : n_(n), edges_(std::move(edges)) {
    if (n < 1) throw Error(ErrorCode::kInvalidInstance, "cut instance needs n >= 1");
    for (const auto& e : edges_) {
      if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
        throw Error(ErrorCode::kInvalidElement, "cut edge endpoint outside ground set");
      }
      if (e.u == e.v) throw Error(ErrorCode::kInvalidInstance, "cut edge is a self-loop");
      if (!(e.w >= 0.0)) throw Error(ErrorCode::kInvalidInstance, "cut edge weight must be >= 0");
    }
  }

  int n() const override { return n_; }
  const std::vector<CutEdge>& edges() const { return edges_; }

  double Evaluate(SubsetView s) const override {
    double value = 0.0;
    for (const auto& e : edges_) {
      if (s.Contains(e.u) != s.Contains(e.v)) value += e.w;
    }
    return value;
  }

 private:
  int n_;
  std::vector<CutEdge> edges_;
};

// Weighted coverage minus a modular cost:
//   f(S) = sum of weights of universe items covered by S - sum of cost(u).
class CoverageInstance : public SetFunction {
 public:
  // With `validate`, non-negativity is certified exhaustively for n <= 20;
  // larger instances must have zero costs. Failure throws
  // NonNegativityViolation.
  CoverageInstance(int n, int universe_size,
                   std::vector<std::vector<int>> covers,
                   std::vector<double> weights, std::vector<double> costs,
                   bool validate = true)
      : n_(n),
        universe_size_(universe_size),
        covers_(std::move(covers)),
        weights_(std::move(weights)),
        costs_(std::move(costs)) {
    if (n < 1) throw Error(ErrorCode::kInvalidInstance, "coverage instance needs n >= 1");
    if (universe_size < 1) throw Error(ErrorCode::kInvalidInstance, "universe must be non-empty");
    if (static_cast<int>(covers_.size()) != n ||
        static_cast<int>(costs_.size()) != n ||
        static_cast<int>(weights_.size()) != universe_size) {
      throw Error(ErrorCode::kInvalidInstance, "coverage array sizes do not match n/universe");
    }
    for (double w : weights_) {
      if (!(w >= 0.0)) throw Error(ErrorCode::kInvalidInstance, "coverage weight must be >= 0");
    }
    for (double c : costs_) {
      if (!(c >= 0.0)) throw Error(ErrorCode::kInvalidInstance, "coverage cost must be >= 0");
    }
    const std::size_t words = WordsFor(universe_size);
    cover_bits_.assign(static_cast<std::size_t>(n) * words, 0);
    for (int u = 0; u < n; ++u) {
      for (int item : covers_[u]) {
        if (item < 0 || item >= universe_size) {
          throw Error(ErrorCode::kInvalidInstance, "coverage item outside universe");
        }
        cover_bits_[u * words + item / kWordBits] |= std::uint64_t{1} << (item % kWordBits);
      }
    }
    if (validate) Validate();
  }

  int n() const override { return n_; }
  int universe_size() const { return universe_size_; }
  const std::vector<std::vector<int>>& covers() const { return covers_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& costs() const { return costs_; }

  double Evaluate(SubsetView s) const override {
    const std::size_t words = WordsFor(universe_size_);
    thread_local std::vector<std::uint64_t> covered;
    covered.assign(words, 0);
    double value = 0.0;
    for (ElementId u : s.Members()) {
      const std::uint64_t* bits = &cover_bits_[u * words];
      for (std::size_t w = 0; w < words; ++w) covered[w] |= bits[w];
      value -= costs_[u];
    }
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t bits = covered[w];
      while (bits != 0) {
        value += weights_[w * kWordBits + std::countr_zero(bits)];
        bits &= bits - 1;
      }
    }
    return value;
  }

 private:
  void Validate() const {
    if (n_ <= kMaxExhaustiveN) {
      if (auto bad = FindNegativeValue(*this)) {
        throw Error(ErrorCode::kNonNegativityViolation, *bad);
      }
      return;
    }
    for (double c : costs_) {
      if (c != 0.0) {
        throw Error(ErrorCode::kNonNegativityViolation,
                    "coverage instances with n > 20 must have zero costs");
      }
    }
  }

  int n_;
  int universe_size_;
  std::vector<std::vector<int>> covers_;
  std::vector<double> weights_;
  std::vector<double> costs_;
  std::vector<std::uint64_t> cover_bits_;
};

// F(x) = c + h.x + 1/2 x'Hx with zero diagonal and non-positive symmetric
// off-diagonal H, over the box [lower, upper]. Because diag(H) = 0, F is
// multilinear and DR-submodular. As a SetFunction it is the restriction to
// box vertices: f(S) = F(v) with v_u = upper_u for u in S, lower_u otherwise.
class QuadraticInstance : public SetFunction {
 public:
  QuadraticInstance(int n, double c, std::vector<double> h,
                    std::vector<std::vector<double>> H,
                    std::vector<double> lower = {},
                    std::vector<double> upper = {}, bool validate = true)
      : n_(n), c_(c), h_(std::move(h)), H_(std::move(H)),
        lower_(std::move(lower)), upper_(std::move(upper)) {
    if (n < 1) throw Error(ErrorCode::kInvalidInstance, "quadratic instance needs n >= 1");
    if (lower_.empty()) lower_.assign(n, 0.0);
    if (upper_.empty()) upper_.assign(n, 1.0);
    if (static_cast<int>(h_.size()) != n || static_cast<int>(H_.size()) != n ||
        static_cast<int>(lower_.size()) != n || static_cast<int>(upper_.size()) != n) {
      throw Error(ErrorCode::kInvalidInstance, "quadratic array sizes do not match n");
    }
    for (int u = 0; u < n; ++u) {
      if (static_cast<int>(H_[u].size()) != n) {
        throw Error(ErrorCode::kInvalidInstance, "H must be n x n");
      }
      if (H_[u][u] != 0.0) throw Error(ErrorCode::kInvalidInstance, "diag(H) must be 0");
      for (int v = 0; v < n; ++v) {
        if (H_[u][v] > 0.0) throw Error(ErrorCode::kInvalidInstance, "H must be entrywise <= 0");
        if (H_[u][v] != H_[v][u]) throw Error(ErrorCode::kInvalidInstance, "H must be symmetric");
      }
      if (!(lower_[u] <= upper_[u])) {
        throw Error(ErrorCode::kInvalidInstance, "box requires lower <= upper");
      }
    }
    if (validate && n <= kMaxExhaustiveN) {
      if (auto bad = FindNegativeValue(*this)) {
        throw Error(ErrorCode::kNonNegativityViolation, "box vertex " + *bad);
      }
    }
  }

  int n() const override { return n_; }
  double c() const { return c_; }
  const std::vector<double>& h() const { return h_; }
  const std::vector<std::vector<double>>& H() const { return H_; }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }

  double Value(std::span<const double> x) const {
    CheckInBox(x);
    double value = c_;
    for (int u = 0; u < n_; ++u) {
      double row = 0.0;
      for (int v = 0; v < n_; ++v) row += H_[u][v] * x[v];
      value += h_[u] * x[u] + 0.5 * x[u] * row;
    }
    return value;
  }

  std::vector<double> Gradient(std::span<const double> x) const {
    CheckInBox(x);
    std::vector<double> grad(h_);
    for (int u = 0; u < n_; ++u) {
      for (int v = 0; v < n_; ++v) grad[u] += H_[u][v] * x[v];
    }
    return grad;
  }

  double Evaluate(SubsetView s) const override {
    std::vector<double> vertex(n_);
    for (int u = 0; u < n_; ++u) vertex[u] = s.Contains(u) ? upper_[u] : lower_[u];
    return Value(vertex);
  }

 private:
  void CheckInBox(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != n_) {
      throw Error(ErrorCode::kInvalidArgument, "point has wrong dimension");
    }
    for (int u = 0; u < n_; ++u) {
      if (!(x[u] >= lower_[u] - 1e-12 && x[u] <= upper_[u] + 1e-12)) {
        throw Error(ErrorCode::kOutOfBox,
                    "coordinate " + std::to_string(u) + " = " + std::to_string(x[u]) +
                        " outside [" + std::to_string(lower_[u]) + ", " +
                        std::to_string(upper_[u]) + "]");
      }
    }
  }

  int n_;
  double c_;
  std::vector<double> h_;
  std::vector<std::vector<double>> H_;
  std::vector<double> lower_;
  std::vector<double> upper_;
};

enum class InstanceKind { kCut, kCoverage, kQuadratic };

inline std::string KindName(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::kCut:
      return "cut";
    case InstanceKind::kCoverage:
      return "coverage";
    case InstanceKind::kQuadratic:
      return "quadratic";
  }
  return "unknown";
}

inline InstanceKind ParseKind(const std::string& name) {
  if (name == "cut") return InstanceKind::kCut;
  if (name == "coverage") return InstanceKind::kCoverage;
  if (name == "quadratic") return InstanceKind::kQuadratic;
  throw Error(ErrorCode::kInvalidInstance, "unknown instance kind '" + name + "'");
}

using Instance = std::variant<CutInstance, CoverageInstance, QuadraticInstance>;

inline const SetFunction& AsSetFunction(const Instance& instance) {
  return std::visit([](const auto& inst) -> const SetFunction& { return inst; },
                    instance);
}

inline InstanceKind KindOf(const Instance& instance) {
  return static_cast<InstanceKind>(instance.index());
}

inline CutInstance GenerateCut(int n, std::uint64_t seed,
                               double edge_probability = 0.5) {
  Rng rng = SubStream(seed, {Tag(StreamTag::kGenerator), 0, static_cast<std::uint64_t>(n)});
  std::uniform_real_distribution<double> weight(0.1, 1.0);
  std::vector<CutEdge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (Uniform01(rng) < edge_probability) edges.push_back({u, v, weight(rng)});
    }
  }
  return CutInstance(n, std::move(edges));
}

inline constexpr int kGeneratorRetries = 8;

inline CoverageInstance GenerateCoverage(int n, std::uint64_t seed) {
  double cost_scale = n > kMaxExhaustiveN ? 0.0 : 0.9;
  for (int attempt = 0; attempt <= kGeneratorRetries; ++attempt) {
    Rng rng = SubStream(seed, {Tag(StreamTag::kGenerator), 1,
                               static_cast<std::uint64_t>(n),
                               static_cast<std::uint64_t>(attempt)});
    const int universe = 2 * n;
    std::uniform_real_distribution<double> weight(0.5, 1.5);
    std::vector<double> weights(universe);
    for (auto& w : weights) w = weight(rng);
    std::vector<std::vector<int>> covers(n);
    std::vector<double> costs(n);
    for (int u = 0; u < n; ++u) {
      for (int item = 0; item < universe; ++item) {
        if (Uniform01(rng) < 0.25) covers[u].push_back(item);
      }
      if (covers[u].empty()) {
        covers[u].push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(universe)));
      }
      double own = 0.0;
      for (int item : covers[u]) own += weights[item];
      costs[u] = cost_scale * Uniform01(rng) * own;
    }
    try {
      return CoverageInstance(n, universe, std::move(covers), std::move(weights),
                              std::move(costs));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNonNegativityViolation) throw;
    }
    cost_scale *= 0.5;
  }
  throw Error(ErrorCode::kNonNegativityViolation,
              "coverage generator exhausted its retries");
}

inline QuadraticInstance GenerateQuadratic(int n, std::uint64_t seed) {
  double scale = 1.0;
  for (int attempt = 0; attempt <= kGeneratorRetries; ++attempt) {
    Rng rng = SubStream(seed, {Tag(StreamTag::kGenerator), 2,
                               static_cast<std::uint64_t>(n),
                               static_cast<std::uint64_t>(attempt)});
    std::uniform_real_distribution<double> linear(0.2, 1.0);
    std::vector<double> h(n);
    for (auto& v : h) v = linear(rng);
    std::vector<std::vector<double>> H(n, std::vector<double>(n, 0.0));
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        const double w = -scale * Uniform01(rng);
        H[u][v] = w;
        H[v][u] = w;
      }
    }
    try {
      return QuadraticInstance(n, 0.0, std::move(h), std::move(H));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNonNegativityViolation) throw;
    }
    scale *= 0.7;
  }
  throw Error(ErrorCode::kNonNegativityViolation,
              "quadratic generator exhausted its retries");
}

inline Instance GenerateRandomInstance(InstanceKind kind, int n,
                                       std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "n must be >= 1");
  switch (kind) {
    case InstanceKind::kCut:
      return GenerateCut(n, seed);
    case InstanceKind::kCoverage:
      return GenerateCoverage(n, seed);
    case InstanceKind::kQuadratic:
      return GenerateQuadratic(n, seed);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown kind");
}

}  // namespace subpar

#endif  // SUBPAR_INSTANCES_H_
