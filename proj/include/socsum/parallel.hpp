/*
 * socsum: soccer broadcast highlights summarizer.
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */
#pragma once

#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace socsum {

// Runs fn(i) for i in [0, n). Each index writes only its own output slot, so
// results are identical for any thread count; threads only partition the
// index range. Exceptions from workers are rethrown on the calling thread.
template <class F>
void parallel_for(std::int64_t n, int threads, F&& fn) {
  if (n <= 0) return;
  if (threads < 1) threads = 1;
  if (static_cast<std::int64_t>(threads) > n) threads = static_cast<int>(n);
  if (threads == 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(threads);
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    std::int64_t lo = n * t / threads;
    std::int64_t hi = n * (t + 1) / threads;
    pool.emplace_back([&fn, &errs, t, lo, hi] {
      try {
        for (std::int64_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errs[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

}  // namespace socsum
