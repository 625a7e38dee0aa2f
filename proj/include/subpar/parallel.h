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

#ifndef SUBPAR_PARALLEL_H_
#define SUBPAR_PARALLEL_H_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace subpar {

namespace internal {
inline std::atomic<int>& DefaultThreadsSlot() {
  static std::atomic<int> slot{0};
  return slot;
}
}  // namespace internal

// Thread count used by oracles that were not given an explicit count.
// Zero means hardware parallelism.
inline int DefaultThreads() {
  const int configured = internal::DefaultThreadsSlot().load();
  if (configured > 0) return configured;
  return std::max(1U, std::thread::hardware_concurrency());
}

inline void SetDefaultThreads(int threads) {
  internal::DefaultThreadsSlot().store(std::max(0, threads));
}

// Static-chunked parallel loop over [0, count). `fn(i)` must be safe to call
// concurrently for distinct i. The first exception thrown by any worker is
// rethrown on the calling thread.
template <class Fn>
void ParallelFor(std::size_t count, int threads, Fn&& fn) {
  if (threads <= 0) threads = DefaultThreads();
  constexpr std::size_t kMinPerThread = 256;
  const std::size_t workers = std::min<std::size_t>(
      static_cast<std::size_t>(threads),
      std::max<std::size_t>(1, count / kMinPerThread));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace subpar

#endif  // SUBPAR_PARALLEL_H_
