#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace zidlab {

// Worker count: explicit config value, else ZIDLAB_THREADS, else hardware.
inline int resolve_threads(int configured) {
  if (configured > 0)
    return configured;
  if (const char *env = std::getenv("ZIDLAB_THREADS")) {
    int v = std::atoi(env);
    if (v > 0)
      return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// Runs fn(0..n-1) across up to `threads` workers. Tasks own their output
// slots, so results are deterministic regardless of scheduling; the first
// exception is rethrown after all workers join.
inline void parallel_for(size_t n, int threads,
                         const std::function<void(size_t)> &fn) {
  if (n == 0)
    return;
  const int workers =
      std::max(1, std::min<int>(threads, static_cast<int>(n)));
  if (workers == 1) {
    for (size_t i = 0; i < n; ++i)
      fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const size_t i = next.fetch_add(1);
        if (i >= n)
          return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(error_mutex);
          if (!error)
            error = std::current_exception();
        }
      }
    });
  }
  for (auto &t : pool)
    t.join();
  if (error)
    std::rethrow_exception(error);
}

} // namespace zidlab
