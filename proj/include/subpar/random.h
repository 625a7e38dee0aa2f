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

#ifndef SUBPAR_RANDOM_H_
#define SUBPAR_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace subpar {

using Rng = std::mt19937_64;

// Independent generator for the stream identified by (seed, keys...). Used
// wherever samples must be reproducible regardless of evaluation order or
// thread count.
inline Rng SubStream(std::uint64_t seed,
                     std::initializer_list<std::uint64_t> keys) {
  std::vector<std::uint32_t> material;
  material.reserve(2 * (keys.size() + 1));
  auto push = [&material](std::uint64_t v) {
    material.push_back(static_cast<std::uint32_t>(v));
    material.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(seed);
  for (std::uint64_t k : keys) push(k);
  std::seed_seq seq(material.begin(), material.end());
  return Rng(seq);
}

// Uniform draw in [0, 1).
inline double Uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

// Stream tags, so that different sampling sites never share a stream.
enum class StreamTag : std::uint64_t {
  kRounding = 1,
  kExtensionSample = 2,
  kTau = 3,
  kPreProcessSample = 4,
  kPreProcessDraw = 5,
  kUpdateSample = 6,
  kUpdateRounding = 7,
  kBaseline = 8,
  kGenerator = 9,
  kVerify = 10,
};

inline std::uint64_t Tag(StreamTag tag) {
  return static_cast<std::uint64_t>(tag);
}

}  // namespace subpar

#endif  // SUBPAR_RANDOM_H_
