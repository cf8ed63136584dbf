#pragma once

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace systl {

inline int default_threads() {
  unsigned h = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(h, 1u, 32u));
}

// Runs fn(thread_id, i) for i in [0, n), dynamically scheduled. fn must be
// thread-safe across distinct thread_ids.
template <class F>
void parallel_for(int n, int threads, F&& fn) {
  if (threads <= 0) threads = default_threads();
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) fn(0, i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(t, i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace systl
