#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>
#include <thread>
#include <vector>

namespace hubo {

// Runs fn(begin, end) over contiguous chunks of [0, n) on up to
// n_threads workers. Chunk boundaries depend only on (n, n_threads), so
// per-index work keyed to the index itself stays deterministic.
inline void parallel_chunks(int64_t n, int n_threads,
                            const std::function<void(int64_t, int64_t, int)>& fn) {
  if (n <= 0) return;
  if (n_threads < 1) n_threads = 1;
  const int workers = static_cast<int>(std::min<int64_t>(n_threads, n));
  if (workers == 1) {
    fn(0, n, 0);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  const int64_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int64_t begin = w * chunk;
    const int64_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&fn, begin, end, w] { fn(begin, end, w); });
  }
  for (auto& t : threads) t.join();
}

// Monotonically decreasing best-energy cell shared across workers.
// Improvements are folded in with a compare-and-swap loop so no
// improvement is ever lost and readers never see a torn value.
class GlobalBestCell {
 public:
  GlobalBestCell() : value_(std::numeric_limits<double>::infinity()) {}

  bool try_improve(double energy) {
    double current = value_.load(std::memory_order_relaxed);
    while (energy < current) {
      if (value_.compare_exchange_weak(current, energy,
                                       std::memory_order_acq_rel)) {
        return true;
      }
    }
    return false;
  }

  double load() const { return value_.load(std::memory_order_acquire); }

 private:
  std::atomic<double> value_;
};

// Physical core count from /proc/cpuinfo (unique physical id/core id
// pairs); falls back to hardware_concurrency when unavailable.
int physical_core_count();

}  // namespace hubo
