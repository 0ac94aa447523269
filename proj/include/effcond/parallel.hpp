#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace effcond {

// Worker count: EFFCOND_THREADS if set, otherwise all cores.
inline unsigned thread_count() {
  if (const char* env = std::getenv("EFFCOND_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// Runs fn(i) for i in [0, n). Each index writes only its own outputs, so the
// result is independent of the thread count and of scheduling.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = std::min<std::size_t>(thread_count(), n ? n : 1);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  for (std::thread& t : pool) t.join();
}

}  // namespace effcond
