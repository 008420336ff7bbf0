#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "index_table.hpp"
#include "model.hpp"
#include "rng.hpp"

namespace hubo {

struct FlipCounters {
  int64_t attempted = 0;
  int64_t accepted = 0;
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct ImprovementEvent {
  double t;
  double energy;
};

// Best-so-far tracking for one worker block. Events are appended in
// the block's logical order; the energy sequence is deterministic, only
// the timestamps depend on the wall clock.
struct BestTracker {
  explicit BestTracker(Clock::time_point t0_) : t0(t0_) {}

  bool try_improve(double energy, const SpinConfig& config) {
    if (energy < best) {
      best = energy;
      best_config = config;
      events.push_back({seconds_since(t0), energy});
      return true;
    }
    return false;
  }

  void heartbeat_marker() { heartbeat_times.push_back(seconds_since(t0)); }

  Clock::time_point t0;
  double best = std::numeric_limits<double>::infinity();
  SpinConfig best_config;
  std::vector<ImprovementEvent> events;
  std::vector<double> heartbeat_times;
};

struct NoObserver {
  void operator()(int32_t, double, double, bool) const {}
};

}  // namespace detail

// One Metropolis sweep in fixed sequential variable order. A proposal
// with delta <= 0 is always accepted; an uphill proposal draws u in
// (0,1) and is accepted iff u < exp(-delta / temperature). The observer
// sees (var, delta, u, accepted) with u = NaN on the downhill path.
template <typename Observer = detail::NoObserver>
inline void metropolis_sweep(IndexTable& table, SpinConfig& config,
                             double temperature, SplitMix64& rng,
                             FlipCounters& counters,
                             detail::BestTracker* tracker = nullptr,
                             Observer&& observer = {}) {
  const int32_t n = table.n_vars();
  const double inv_t = 1.0 / temperature;
  for (int32_t var = 0; var < n; ++var) {
    const double delta = table.delta_energy(var);
    counters.attempted++;
    bool accept;
    double u = std::numeric_limits<double>::quiet_NaN();
    if (delta <= 0.0) {
      accept = true;
    } else {
      u = rng.next_open01();
      accept = u < std::exp(-delta * inv_t);
    }
    observer(var, delta, u, accept);
    if (accept) {
      counters.accepted++;
      const double energy = table.apply_flip(config, var);
      if (tracker != nullptr) tracker->try_improve(energy, config);
    }
  }
}

}  // namespace hubo
