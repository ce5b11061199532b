#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace dfkg {

// Worker count resolution: explicit request > DFKG_WORKERS env > hardware.
inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("DFKG_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Index-parallel loop; results must be written to per-index slots so the
// output is deterministic regardless of scheduling.
inline void parallel_for(long n, int workers,
                         const std::function<void(long)>& body) {
  workers = resolve_workers(workers);
  if (workers <= 1 || n <= 1) {
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<long> next{0};
  std::vector<std::thread> pool;
  const int count = static_cast<int>(std::min<long>(workers, n));
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int w = 0; w < count; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const long i = next.fetch_add(1);
        if (i >= n || failed.load()) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          failed.store(true);
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace dfkg
