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

#ifndef SUBPAR_ORACLE_H_
#define SUBPAR_ORACLE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "subpar/error.h"
#include "subpar/parallel.h"
#include "subpar/subset.h"

namespace subpar {

// A set function f: 2^N -> R. Implementations must be pure: Evaluate may be
// called concurrently and must return bit-identical values for equal inputs.
class SetFunction {
 public:
  virtual ~SetFunction() = default;
  virtual int n() const = 0;
  virtual double Evaluate(SubsetView s) const = 0;
};

// Adaptive rounds and queries consumed through a gateway.
struct OracleAccounting {
  std::int64_t rounds = 0;
  std::int64_t queries = 0;

  friend OracleAccounting operator-(OracleAccounting a, OracleAccounting b) {
    return {a.rounds - b.rounds, a.queries - b.queries};
  }
  friend bool operator==(const OracleAccounting&,
                         const OracleAccounting&) = default;
};

// Counters reported by the algorithm-facing oracles. `f_queries` are set
// queries, `F_queries` are value queries to the continuous objective (the
// multilinear extension or a DR-submodular function), `derivative_queries`
// are single-coordinate derivative queries to a DR gradient oracle.
struct UsageCounters {
  std::int64_t rounds = 0;
  std::int64_t f_queries = 0;
  std::int64_t F_queries = 0;
  std::int64_t derivative_queries = 0;

  friend UsageCounters operator-(UsageCounters a, UsageCounters b) {
    return {a.rounds - b.rounds, a.f_queries - b.f_queries,
            a.F_queries - b.F_queries,
            a.derivative_queries - b.derivative_queries};
  }
};

// Batched evaluation gateway. One EvalBatch call is one adaptive round no
// matter how many queries it carries; queries inside a batch are evaluated
// concurrently. The accounting record is the only mutable state.
class SetOracle {
 public:
  using BatchObserver = std::function<void(std::size_t batch_size)>;

  explicit SetOracle(const SetFunction& f, int threads = 0)
      : f_(&f), threads_(threads) {}

  SetOracle(const SetOracle&) = delete;
  SetOracle& operator=(const SetOracle&) = delete;

  int n() const { return f_->n(); }
  const SetFunction& function() const { return *f_; }
  int threads() const { return threads_; }

  std::vector<double> EvalBatch(const QueryBatch& batch) {
    if (batch.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "empty query batch");
    }
    if (batch.n() != n()) {
      throw Error(ErrorCode::kInvalidElement,
                  "batch built for n=" + std::to_string(batch.n()) +
                      ", oracle has n=" + std::to_string(n()));
    }
    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (!batch[i].IsValid()) {
        throw Error(ErrorCode::kInvalidElement,
                    "query " + std::to_string(i) +
                        " references an element id >= " + std::to_string(n()));
      }
    }
    std::vector<double> out(batch.size());
    ParallelFor(batch.size(), threads_,
                [&](std::size_t i) { out[i] = f_->Evaluate(batch[i]); });
    Record(batch.size());
    return out;
  }

  double EvalSingle(SubsetView s) {
    QueryBatch batch(n());
    batch.Append(s);
    return EvalBatch(batch)[0];
  }

  void ResetAccounting() {
    std::lock_guard<std::mutex> lock(mu_);
    accounting_ = {};
  }

  OracleAccounting accounting() const {
    std::lock_guard<std::mutex> lock(mu_);
    return accounting_;
  }

  // Called once per completed batch; used by tests to audit round counts.
  void SetBatchObserver(BatchObserver observer) {
    std::lock_guard<std::mutex> lock(mu_);
    observer_ = std::move(observer);
  }

 private:
  void Record(std::size_t batch_size) {
    BatchObserver observer;
    {
      std::lock_guard<std::mutex> lock(mu_);
      accounting_.rounds += 1;
      accounting_.queries += static_cast<std::int64_t>(batch_size);
      observer = observer_;
    }
    if (observer) observer(batch_size);
  }

  const SetFunction* f_;
  int threads_;
  mutable std::mutex mu_;
  OracleAccounting accounting_;
  BatchObserver observer_;
};

}  // namespace subpar

#endif  // SUBPAR_ORACLE_H_
