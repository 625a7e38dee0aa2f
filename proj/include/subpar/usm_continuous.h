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

#ifndef SUBPAR_USM_CONTINUOUS_H_
#define SUBPAR_USM_CONTINUOUS_H_

#include <cstdint>

#include "subpar/baselines.h"
#include "subpar/continuous_core.h"
#include "subpar/fractional_point.h"
#include "subpar/multilinear.h"
#include "subpar/random.h"
#include "subpar/subset.h"

namespace subpar {

struct ContinuousResult {
  // Empty when the instance was small enough to brute-force.
  CoreRun core;
  bool brute_forced = false;
  FractionalPoint solution;
  // F(solution): exact under the exact oracle, an estimate when sampled.
  double value = 0.0;
  // One draw of R(solution) and its f-value.
  Subset rounded;
  double rounded_value = 0.0;
  UsageCounters usage;

  int iterations() const { return core.iterations(); }
};

// Unconstrained submodular maximization with value access to the
// multilinear extension. Rounds: tau (1) + pre-process (1) + at most two per
// update + F(x) of the output (1) + f of the rounded set (1).
inline ContinuousResult RunContinuous(MultilinearOracle& oracle, double epsilon,
                                      std::uint64_t seed) {
  ValidateEpsilon(epsilon);
  const UsageCounters start = oracle.Usage();
  ContinuousResult out;
  const int n = oracle.dimension();
  if (n < 3) {
    const BruteForceResult bf = BruteForce(oracle.base());
    out.brute_forced = true;
    out.solution = FractionalPoint::Indicator(bf.best);
    out.value = bf.value;
    out.rounded = bf.best;
    out.rounded_value = bf.value;
    out.usage = oracle.Usage() - start;
    return out;
  }
  out.core = RunCore(oracle, epsilon);
  out.solution = out.core.solution();
  out.value = oracle.ExtensionValue(out.solution);
  Rng rng = SubStream(seed, {Tag(StreamTag::kRounding)});
  out.rounded = SampleSet(out.solution, rng);
  out.rounded_value = oracle.base().EvalSingle(out.rounded);
  out.usage = oracle.Usage() - start;
  return out;
}

}  // namespace subpar

#endif  // SUBPAR_USM_CONTINUOUS_H_
