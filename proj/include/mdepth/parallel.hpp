#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace mdepth {

// Worker count: MDEPTH_THREADS when set (>= 1), hardware concurrency otherwise.
inline int thread_count() {
  if (const char* env = std::getenv("MDEPTH_THREADS")) {
    const int t = std::atoi(env);
    if (t >= 1) return t;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Order-independent parallel map: fn(i) must write only to slot i of its own
// output, so results are identical for any worker count.
template <class F>
void parallel_for(std::size_t n, F&& fn) {
  const int threads = thread_count();
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace mdepth
