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

#ifndef SUBPAR_MULTILINEAR_H_
#define SUBPAR_MULTILINEAR_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "subpar/error.h"
#include "subpar/fractional_point.h"
#include "subpar/oracle.h"
#include "subpar/parallel.h"
#include "subpar/random.h"
#include "subpar/subset.h"

namespace subpar {

// Values and gradients returned by one batched evaluation (one adaptive
// round) of a continuous objective.
struct PointEvaluation {
  std::vector<double> values;
  std::vector<std::vector<double>> gradients;
};

namespace table {

// Folds bit `bit` of a table of size 2^k: entry j of the result interpolates
// the two entries of the source that differ only in that bit.
inline std::vector<double> FoldBit(std::span<const double> src, int bit,
                                   double p) {
  const std::size_t out_size = src.size() / 2;
  std::vector<double> dst(out_size);
  const std::size_t low_mask = (std::size_t{1} << bit) - 1;
  for (std::size_t j = 0; j < out_size; ++j) {
    const std::size_t i0 = ((j & ~low_mask) << 1) | (j & low_mask);
    const std::size_t i1 = i0 | (std::size_t{1} << bit);
    dst[j] = src[i0] + p * (src[i1] - src[i0]);
  }
  return dst;
}

// Multilinear interpolation of a table indexed by subset bit masks:
// sum_S t[S] prod_{u in S} x_u prod_{u not in S} (1 - x_u).
inline double Contract(std::span<const double> t, std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  std::vector<double> buf(t.begin(), t.end());
  std::size_t size = buf.size();
  for (int u = n - 1; u >= 0; --u) {
    const std::size_t half = size / 2;
    const double p = x[static_cast<std::size_t>(u)];
    for (std::size_t j = 0; j < half; ++j) {
      buf[j] = buf[j] + p * (buf[j + half] - buf[j]);
    }
    size = half;
  }
  return buf[0];
}

namespace internal {
inline void LeaveOneOut(std::vector<double> t, std::span<const int> coords,
                        std::span<const double> x, std::span<double> at_zero,
                        std::span<double> at_one) {
  const int k = static_cast<int>(coords.size());
  if (k == 1) {
    at_zero[static_cast<std::size_t>(coords[0])] = t[0];
    at_one[static_cast<std::size_t>(coords[0])] = t[1];
    return;
  }
  const int half = k / 2;
  {
    std::vector<double> low = t;
    for (int b = k - 1; b >= half; --b) low = FoldBit(low, b, x[coords[b]]);
    LeaveOneOut(std::move(low), coords.subspan(0, half), x, at_zero, at_one);
  }
  for (int b = 0; b < half; ++b) t = FoldBit(t, 0, x[coords[b]]);
  LeaveOneOut(std::move(t), coords.subspan(half), x, at_zero, at_one);
}
}  // namespace internal

// For every u, the interpolation with coordinate u pinned to 0 and to 1,
// i.e. F(x ^ 1_{N-u}) and F(x v 1_{u}). Costs O(2^n) instead of O(n 2^n).
inline void LeaveOneOut(std::span<const double> t, std::span<const double> x,
                        std::span<double> at_zero, std::span<double> at_one) {
  std::vector<int> coords(x.size());
  std::iota(coords.begin(), coords.end(), 0);
  internal::LeaveOneOut(std::vector<double>(t.begin(), t.end()), coords, x,
                        at_zero, at_one);
}

inline std::vector<double> Gradient(std::span<const double> t,
                                    std::span<const double> x) {
  std::vector<double> at_zero(x.size()), at_one(x.size());
  LeaveOneOut(t, x, at_zero, at_one);
  for (std::size_t u = 0; u < x.size(); ++u) at_one[u] -= at_zero[u];
  return at_one;
}

}  // namespace table

// Independent rounding R(x): each u is included with probability x_u.
inline Subset SampleSet(const FractionalPoint& x, Rng& rng) {
  Subset s(x.n());
  for (int u = 0; u < x.n(); ++u) {
    if (Uniform01(rng) < x[u]) s.Insert(u);
  }
  return s;
}

enum class ExtensionMode { kExact, kSampled };

struct MultilinearOptions {
  ExtensionMode mode = ExtensionMode::kExact;
  // Draws of R(x) per extension value in sampled mode.
  int samples = 1000;
  int exact_threshold = 20;
  std::uint64_t seed = 0;
};

// Value oracle for the multilinear extension F(x) = E[f(R(x))] built on a
// set-function gateway.
//
// Exact mode tabulates f over all 2^n subsets in a single set-query batch
// and combines the table for every requested argument, so each Evaluate call
// costs one adaptive round and 2^n set queries. Sampled mode averages
// `samples` fresh draws of R(x) per argument, all arguments in one batch.
// Partial derivatives use dF/dx_u = F(x v 1_u) - F(x ^ 1_{N-u}) in both
// modes and are charged as two F-queries each.
class MultilinearOracle {
 public:
  MultilinearOracle(SetOracle& base, MultilinearOptions options = {})
      : base_(&base), options_(options) {
    if (options_.mode == ExtensionMode::kSampled && options_.samples < 1) {
      throw Error(ErrorCode::kParamOutOfRange, "sampled mode needs samples >= 1");
    }
  }

  int dimension() const { return base_->n(); }
  SetOracle& base() { return *base_; }
  const MultilinearOptions& options() const { return options_; }

  PointEvaluation Evaluate(std::span<const FractionalPoint> value_points,
                           std::span<const FractionalPoint> gradient_points) {
    const int n = dimension();
    if (value_points.empty() && gradient_points.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "nothing to evaluate");
    }
    for (const auto& p : value_points) CheckDimension(p);
    for (const auto& p : gradient_points) CheckDimension(p);
    if (options_.mode == ExtensionMode::kExact && n > options_.exact_threshold) {
      throw Error(ErrorCode::kExactTooLarge,
                  "n=" + std::to_string(n) + " exceeds exact_threshold=" +
                      std::to_string(options_.exact_threshold));
    }
    PointEvaluation out = options_.mode == ExtensionMode::kExact
                              ? EvaluateExact(value_points, gradient_points)
                              : EvaluateSampled(value_points, gradient_points);
    F_queries_ += static_cast<std::int64_t>(value_points.size()) +
                  2 * static_cast<std::int64_t>(n) *
                      static_cast<std::int64_t>(gradient_points.size());
    return out;
  }

  double ExtensionValue(const FractionalPoint& x) {
    const FractionalPoint pts[] = {x};
    return Evaluate(pts, {}).values[0];
  }

  double PartialDerivative(const FractionalPoint& x, ElementId u) {
    if (u < 0 || u >= dimension()) {
      throw Error(ErrorCode::kInvalidElement, "element " + std::to_string(u));
    }
    const FractionalPoint pts[] = {x.JoinElement(u), x.MeetComplement(u)};
    const auto values = Evaluate(pts, {}).values;
    return values[0] - values[1];
  }

  std::vector<std::vector<double>> GradientBatch(
      std::span<const FractionalPoint> points) {
    return Evaluate({}, points).gradients;
  }

  UsageCounters Usage() const {
    const auto acc = base_->accounting();
    return {acc.rounds, acc.queries, F_queries_, 0};
  }

  void ResetAccounting() {
    base_->ResetAccounting();
    F_queries_ = 0;
  }

 private:
  void CheckDimension(const FractionalPoint& p) const {
    if (p.n() != dimension()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "point of dimension " + std::to_string(p.n()) +
                      " for ground set of size " + std::to_string(dimension()));
    }
  }

  PointEvaluation EvaluateExact(std::span<const FractionalPoint> value_points,
                                std::span<const FractionalPoint> gradient_points) {
    const int n = dimension();
    const std::uint64_t count = std::uint64_t{1} << n;
    QueryBatch batch(n);
    batch.Reserve(count);
    for (std::uint64_t mask = 0; mask < count; ++mask) batch.AppendMask(mask);
    const std::vector<double> t = base_->EvalBatch(batch);

    PointEvaluation out;
    out.values.resize(value_points.size());
    out.gradients.resize(gradient_points.size());
    const std::size_t total = value_points.size() + gradient_points.size();
    ParallelFor(total, base_->threads(), [&](std::size_t i) {
      if (i < value_points.size()) {
        out.values[i] = table::Contract(t, value_points[i].coords());
      } else {
        const std::size_t g = i - value_points.size();
        out.gradients[g] = table::Gradient(t, gradient_points[g].coords());
      }
    });
    return out;
  }

  PointEvaluation EvaluateSampled(
      std::span<const FractionalPoint> value_points,
      std::span<const FractionalPoint> gradient_points) {
    const int n = dimension();
    const std::size_t k = static_cast<std::size_t>(options_.samples);
    // Arguments: value points first, then (x v 1_u, x ^ 1_{N-u}) per
    // gradient point and element.
    const std::size_t args =
        value_points.size() + 2 * static_cast<std::size_t>(n) * gradient_points.size();
    // One k x n matrix of uniforms per batch, shared by every argument:
    // R(p) = {u : U[s][u] < p_u}. Each mean is still unbiased, and estimates
    // at nearby points move together.
    const std::uint64_t batch_id = batch_counter_++;
    Rng rng = SubStream(options_.seed, {Tag(StreamTag::kExtensionSample), batch_id});
    std::vector<double> uniforms(k * static_cast<std::size_t>(n));
    for (double& v : uniforms) v = Uniform01(rng);
    QueryBatch batch(n);
    batch.Reserve(args * k);
    for (std::size_t a = 0; a < args; ++a) {
      const FractionalPoint* base_point;
      int pinned = -1;
      double pinned_value = 0.0;
      if (a < value_points.size()) {
        base_point = &value_points[a];
      } else {
        const std::size_t rel = a - value_points.size();
        base_point = &gradient_points[rel / (2 * static_cast<std::size_t>(n))];
        const std::size_t within = rel % (2 * static_cast<std::size_t>(n));
        pinned = static_cast<int>(within / 2);
        pinned_value = within % 2 == 0 ? 1.0 : 0.0;
      }
      for (std::size_t s = 0; s < k; ++s) {
        const std::size_t q = batch.AppendEmpty();
        const double* row = uniforms.data() + s * static_cast<std::size_t>(n);
        for (int u = 0; u < n; ++u) {
          const double p = u == pinned ? pinned_value : (*base_point)[u];
          if (row[u] < p) batch.Insert(q, u);
        }
      }
    }
    const std::vector<double> f = base_->EvalBatch(batch);
    std::vector<double> means(args);
    for (std::size_t a = 0; a < args; ++a) {
      double sum = 0.0;
      for (std::size_t s = 0; s < k; ++s) sum += f[a * k + s];
      means[a] = sum / static_cast<double>(k);
    }
    PointEvaluation out;
    out.values.assign(means.begin(), means.begin() + value_points.size());
    out.gradients.resize(gradient_points.size());
    for (std::size_t g = 0; g < gradient_points.size(); ++g) {
      auto& grad = out.gradients[g];
      grad.resize(static_cast<std::size_t>(n));
      const std::size_t base = value_points.size() + g * 2 * static_cast<std::size_t>(n);
      for (int u = 0; u < n; ++u) {
        grad[u] = means[base + 2 * u] - means[base + 2 * u + 1];
      }
    }
    return out;
  }

  SetOracle* base_;
  MultilinearOptions options_;
  std::int64_t F_queries_ = 0;
  std::uint64_t batch_counter_ = 0;
};

// Lovasz extension: integral over lambda in [0,1] of f({u : x_u >= lambda}).
// The n+1 threshold sets are evaluated in one batch.
inline double LovaszValue(SetOracle& oracle, const FractionalPoint& x) {
  const int n = oracle.n();
  if (x.n() != n) throw Error(ErrorCode::kInvalidArgument, "dimension mismatch");
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&x](int a, int b) { return x[a] > x[b]; });
  QueryBatch batch(n);
  Subset prefix(n);
  batch.Append(prefix);
  for (int i = 0; i < n; ++i) {
    prefix.Insert(order[i]);
    batch.Append(prefix);
  }
  const auto f = oracle.EvalBatch(batch);
  // Top-i set is the threshold set for lambda in (x_{order[i]}, x_{order[i-1]}].
  double value = 0.0;
  double upper = 1.0;
  for (int i = 0; i <= n; ++i) {
    const double lower = i < n ? x[order[i]] : 0.0;
    value += (upper - lower) * f[i];
    upper = lower;
  }
  return value;
}

}  // namespace subpar

#endif  // SUBPAR_MULTILINEAR_H_
