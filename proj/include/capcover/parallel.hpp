// Copyright 2026 The capcover Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace capcover {

namespace detail {
inline std::atomic<unsigned>& worker_count_storage() {
  static std::atomic<unsigned> count{0};
  return count;
}
}  // namespace detail

/// Number of worker threads used by the parallel Monte Carlo loops.
/// Zero means "use std::thread::hardware_concurrency()".
inline unsigned worker_count() {
  unsigned n = detail::worker_count_storage().load(std::memory_order_relaxed);
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

inline void set_worker_count(unsigned n) {
  detail::worker_count_storage().store(n, std::memory_order_relaxed);
}

/// Runs body(i) for every i in [0, n). Tasks are handed out in a fixed
/// strided pattern; callers write results to per-index slots, so the
/// outcome never depends on the worker count.
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&body, &errors, w, workers, n] {
        try {
          for (std::size_t i = w; i < n; i += workers) body(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace capcover
