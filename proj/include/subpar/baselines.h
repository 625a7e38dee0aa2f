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

#ifndef SUBPAR_BASELINES_H_
#define SUBPAR_BASELINES_H_

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "subpar/error.h"
#include "subpar/fractional_point.h"
#include "subpar/multilinear.h"
#include "subpar/oracle.h"
#include "subpar/random.h"
#include "subpar/subset.h"

namespace subpar {

enum class BaselineKind {
  kRandomizedDoubleGreedy,
  kDeterministicDoubleGreedy,
  kRandomHalf,
  kBruteForce,
};

struct BruteForceResult {
  Subset best;
  double value = 0.0;
};

inline constexpr int kBruteForceLimit = 24;

// Exact maximizer by enumerating all 2^n subsets in one batch. Ties go to
// the lexicographically smallest sorted member list.
inline BruteForceResult BruteForce(SetOracle& oracle,
                                   int n_limit = kBruteForceLimit) {
  const int n = oracle.n();
  if (n > n_limit || n > kBruteForceLimit) {
    throw Error(ErrorCode::kTooLarge, "brute force limited to n <= " +
                                          std::to_string(std::min(n_limit, kBruteForceLimit)));
  }
  const std::uint64_t count = std::uint64_t{1} << n;
  QueryBatch batch(n);
  batch.Reserve(count);
  for (std::uint64_t mask = 0; mask < count; ++mask) batch.AppendMask(mask);
  const auto values = oracle.EvalBatch(batch);

  auto lex_less = [n](std::uint64_t a, std::uint64_t b) {
    const auto ma = Subset::FromMask(n, a).Members();
    const auto mb = Subset::FromMask(n, b).Members();
    return std::lexicographical_compare(ma.begin(), ma.end(), mb.begin(), mb.end());
  };
  std::uint64_t best = 0;
  for (std::uint64_t mask = 1; mask < count; ++mask) {
    if (values[mask] > values[best] ||
        (values[mask] == values[best] && best != 0 && lex_less(mask, best))) {
      best = mask;
    }
  }
  return {Subset::FromMask(n, best), values[best]};
}

// Double greedy over elements 0..n-1 in order. Each element costs one batch
// of four queries: f(X+u), f(X), f(Y-u), f(Y). a = f(u|X), b = f(Y-u) - f(Y).
// The randomized rule keeps u with probability a+/(a+ + b+) (keeping it when
// both are zero); the deterministic rule keeps u iff a >= b.
inline Subset DoubleGreedy(SetOracle& oracle, bool randomized,
                           std::uint64_t seed = 0) {
  const int n = oracle.n();
  Subset X(n);
  Subset Y = Subset::Full(n);
  for (ElementId u = 0; u < n; ++u) {
    QueryBatch batch(n);
    batch.Append(X.With(u));
    batch.Append(X);
    batch.Append(Y.Without(u));
    batch.Append(Y);
    const auto f = oracle.EvalBatch(batch);
    const double a = f[0] - f[1];
    const double b = f[2] - f[3];
    bool keep;
    if (randomized) {
      const double a_plus = std::max(a, 0.0);
      const double b_plus = std::max(b, 0.0);
      const double p = a_plus + b_plus == 0.0 ? 1.0 : a_plus / (a_plus + b_plus);
      Rng rng = SubStream(seed, {Tag(StreamTag::kBaseline), static_cast<std::uint64_t>(u)});
      keep = Uniform01(rng) < p;
    } else {
      keep = a >= b;
    }
    if (keep) {
      X.Insert(u);
    } else {
      Y.Erase(u);
    }
  }
  return X;
}

// R(1/2 1_N); issues no queries.
inline Subset RandomHalf(int n, std::uint64_t seed) {
  Rng rng = SubStream(seed, {Tag(StreamTag::kBaseline), 0x48414c46});
  return SampleSet(FractionalPoint::Constant(n, 0.5), rng);
}

}  // namespace subpar

#endif  // SUBPAR_BASELINES_H_
