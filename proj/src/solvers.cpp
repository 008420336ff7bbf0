#include "solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "index_table.hpp"
#include "parallel.hpp"

namespace hubo {

using detail::BestTracker;
using detail::Clock;
using detail::seconds_since;

namespace {

constexpr double kHeartbeatSeconds = 0.010;
constexpr double kTraceTimeNudge = 1e-9;

double nearest_rank_percentile(std::vector<double>& values, double p) {
  std::sort(values.begin(), values.end());
  size_t rank =
      static_cast<size_t>(std::ceil(p * static_cast<double>(values.size())));
  rank = std::clamp<size_t>(rank, 1, values.size());
  return values[rank - 1];
}

// Merges per-block trackers (in block order) into the final trace:
// strictly improving ladder, monotone timestamps, heartbeat markers
// restated at the ladder's value in force.
struct TraceAssembly {
  std::vector<TraceEntry> trace;
  double best_energy = std::numeric_limits<double>::infinity();
  SpinConfig best_config;
};

TraceAssembly assemble_trace(std::vector<BestTracker>& blocks,
                             double elapsed_seconds) {
  TraceAssembly out;
  std::vector<TraceEntry> ladder;
  for (const BestTracker& block : blocks) {
    for (const detail::ImprovementEvent& ev : block.events) {
      if (ev.energy < out.best_energy) {
        out.best_energy = ev.energy;
        ladder.push_back({ev.t, ev.energy, false});
      }
    }
  }
  for (const BestTracker& block : blocks) {
    if (block.best == out.best_energy && !block.best_config.empty()) {
      out.best_config = block.best_config;
      break;
    }
  }
  for (size_t i = 1; i < ladder.size(); ++i) {
    ladder[i].t_seconds =
        std::max(ladder[i].t_seconds, ladder[i - 1].t_seconds + kTraceTimeNudge);
  }

  std::vector<double> markers;
  for (const BestTracker& block : blocks) {
    markers.insert(markers.end(), block.heartbeat_times.begin(),
                   block.heartbeat_times.end());
  }
  std::sort(markers.begin(), markers.end());
  if (elapsed_seconds > 0.0) markers.push_back(elapsed_seconds);

  out.trace.reserve(ladder.size() + markers.size());
  size_t li = 0;
  double current = std::numeric_limits<double>::quiet_NaN();
  double last_t = -1.0;
  auto push = [&](TraceEntry e) {
    if (e.t_seconds <= last_t) e.t_seconds = last_t + kTraceTimeNudge;
    last_t = e.t_seconds;
    out.trace.push_back(e);
  };
  for (double m : markers) {
    while (li < ladder.size() && ladder[li].t_seconds <= m) {
      current = ladder[li].energy;
      push(ladder[li]);
      li++;
    }
    if (li == 0) continue;  // marker precedes the first sample
    if (m - last_t >= kHeartbeatSeconds) push({m, current, true});
  }
  while (li < ladder.size()) {
    push(ladder[li]);
    li++;
  }
  return out;
}

void fill_result(const HuboInstance& instance, RunResult& result,
                 TraceAssembly&& assembly,
                 const std::vector<FlipCounters>& counters, double elapsed) {
  result.best_config = std::move(assembly.best_config);
  result.trace = std::move(assembly.trace);
  result.elapsed_seconds = elapsed;
  for (const FlipCounters& c : counters) {
    result.attempted_flips += c.attempted;
    result.accepted_flips += c.accepted;
  }
  // The running energy carries fp accumulation drift; the reported best
  // is the clean re-evaluation of the best configuration. The trace tail
  // follows: entries sitting on the old running best take the exact
  // value, and improvement entries whose drifted energy undercuts it
  // (phantom sub-drift improvements) are dropped so the ladder stays
  // non-increasing.
  const double running_best = assembly.best_energy;
  result.best_energy = evaluate_energy(instance, result.best_config);
  std::vector<TraceEntry> cleaned;
  cleaned.reserve(result.trace.size());
  double ladder_value = std::numeric_limits<double>::infinity();
  for (TraceEntry e : result.trace) {
    if (e.heartbeat) {
      e.energy = ladder_value;  // restate against the cleaned ladder
    } else if (e.energy == running_best) {
      e.energy = result.best_energy;
      ladder_value = e.energy;
    } else if (e.energy <= result.best_energy) {
      continue;
    } else {
      ladder_value = e.energy;
    }
    cleaned.push_back(e);
  }
  result.trace = std::move(cleaned);
}

SpinConfig draw_config(int32_t n, SplitMix64& rng) {
  SpinConfig c(n);
  for (int32_t i = 0; i < n; ++i) c[i] = rng.next_bool() ? 1 : -1;
  return c;
}

}  // namespace

double TemperatureSchedule::temperature(int step) const {
  if (n_steps <= 1) return t_hot;
  const double frac = static_cast<double>(step) / (n_steps - 1);
  return t_hot * std::pow(t_cold / t_hot, frac);
}

std::vector<double> sample_abs_deltas(const HuboInstance& instance,
                                      uint64_t seed, int n_configs) {
  std::vector<double> deltas;
  deltas.reserve(static_cast<size_t>(n_configs) * instance.n_vars());
  for (int s = 0; s < n_configs; ++s) {
    SpinConfig config =
        random_config(instance.n_vars(), derive_stream(seed, s));
    IndexTable table(instance, config);
    for (int32_t v = 0; v < instance.n_vars(); ++v) {
      deltas.push_back(std::abs(table.delta_energy(v)));
    }
  }
  return deltas;
}

TemperatureSchedule make_schedule(const HuboInstance& instance,
                                  const ScheduleParams& params) {
  TemperatureSchedule schedule;
  schedule.n_steps = params.n_steps;
  if (params.t_hot && params.t_cold) {
    schedule.t_hot = *params.t_hot;
    schedule.t_cold = *params.t_cold;
  } else {
    std::vector<double> deltas =
        sample_abs_deltas(instance, params.sample_seed, params.sample_configs);
    const double p90 = nearest_rank_percentile(deltas, 0.90);
    const double p10 = nearest_rank_percentile(deltas, 0.10);
    double t_hot = p90 / std::log(2.0);
    double t_cold = p10 / std::log(100.0);
    if (t_hot <= 0.0) t_hot = 1.0;
    if (t_cold <= 0.0 || t_cold >= t_hot) t_cold = t_hot * 1e-3;
    schedule.t_hot = params.t_hot.value_or(t_hot);
    schedule.t_cold = params.t_cold.value_or(t_cold);
  }
  if (!(schedule.t_hot > schedule.t_cold && schedule.t_cold > 0.0)) {
    throw std::invalid_argument(
        "temperature endpoints must satisfy t_hot > t_cold > 0");
  }
  if (schedule.n_steps < 1) {
    throw std::invalid_argument("schedule needs at least one step");
  }
  return schedule;
}

RunResult run_sa(const HuboInstance& instance, const SaParams& params,
                 uint64_t seed, int n_threads) {
  if (params.n_restarts < 1) {
    throw std::invalid_argument("SA needs at least one restart");
  }
  if (params.sweeps < 1) {
    throw std::invalid_argument("SA needs at least one sweep per restart");
  }
  const TemperatureSchedule schedule = [&] {
    ScheduleParams sp = params.schedule;
    sp.n_steps = params.sweeps;
    return make_schedule(instance, sp);
  }();

  const int32_t n = instance.n_vars();
  const Clock::time_point t0 = Clock::now();
  const int workers =
      static_cast<int>(std::min<int64_t>(std::max(1, n_threads),
                                         params.n_restarts));
  std::vector<BestTracker> blocks(workers, BestTracker(t0));
  std::vector<FlipCounters> counters(workers);
  GlobalBestCell global_best;

  parallel_chunks(params.n_restarts, workers,
                  [&](int64_t begin, int64_t end, int w) {
    // Worker-local state; shared vectors see one write-back at the end
    // so hot-loop increments never contend on a cache line.
    BestTracker tracker(t0);
    FlipCounters flips;
    double last_marker = 0.0;
    for (int64_t r = begin; r < end; ++r) {
      if (params.wall_clock_limit_seconds &&
          seconds_since(t0) >= *params.wall_clock_limit_seconds) {
        break;
      }
      SplitMix64 rng(derive_stream(seed, static_cast<uint64_t>(r)));
      SpinConfig config = draw_config(n, rng);
      IndexTable table(instance, config);
      if (tracker.try_improve(table.energy(), config)) {
        global_best.try_improve(table.energy());
      }
      for (int step = 0; step < params.sweeps; ++step) {
        if (params.wall_clock_limit_seconds && step > 0 &&
            seconds_since(t0) >= *params.wall_clock_limit_seconds) {
          break;
        }
        metropolis_sweep(table, config, schedule.temperature(step), rng,
                         flips, &tracker);
      }
      global_best.try_improve(tracker.best);
      const double now = seconds_since(t0);
      if (now - last_marker >= kHeartbeatSeconds) {
        tracker.heartbeat_marker();
        last_marker = now;
      }
    }
    blocks[w] = std::move(tracker);
    counters[w] = flips;
  });

  const double elapsed = seconds_since(t0);
  RunResult result;
  result.solver_id = "sa";
  fill_result(instance, result, assemble_trace(blocks, elapsed), counters, elapsed);
  return result;
}

RunResult run_pt(const HuboInstance& instance, const PtParams& params,
                 uint64_t seed) {
  if (params.n_replicas < 2) {
    throw std::invalid_argument("PT needs at least two replicas");
  }
  if (params.sweeps_per_exchange < 1) {
    throw std::invalid_argument("PT needs at least one sweep per exchange");
  }
  if (!params.max_exchanges && params.time_limit_seconds <= 0.0) {
    throw std::invalid_argument("PT needs a positive time limit");
  }

  double t_hot, t_cold;
  if (params.t_hot && params.t_cold) {
    t_hot = *params.t_hot;
    t_cold = *params.t_cold;
    if (!(t_hot >= t_cold && t_cold > 0.0)) {
      throw std::invalid_argument(
          "PT endpoints must satisfy t_hot >= t_cold > 0");
    }
  } else {
    ScheduleParams sp;
    sp.sample_configs = params.schedule_sample_configs;
    const TemperatureSchedule s = make_schedule(instance, sp);
    t_hot = params.t_hot.value_or(s.t_hot);
    t_cold = params.t_cold.value_or(s.t_cold);
  }

  const int k = params.n_replicas;
  std::vector<double> temps(k), betas(k);
  for (int i = 0; i < k; ++i) {
    const double frac = static_cast<double>(i) / (k - 1);
    temps[i] = t_hot * std::pow(t_cold / t_hot, frac);
    betas[i] = 1.0 / temps[i];
  }

  const int32_t n = instance.n_vars();
  const Clock::time_point t0 = Clock::now();
  std::vector<BestTracker> blocks(1, BestTracker(t0));
  BestTracker& tracker = blocks[0];
  std::vector<FlipCounters> counters(1);

  std::vector<SpinConfig> configs;
  std::vector<IndexTable> tables;
  std::vector<SplitMix64> rngs;
  configs.reserve(k);
  tables.reserve(k);
  rngs.reserve(k);
  for (int i = 0; i < k; ++i) {
    rngs.emplace_back(derive_stream(seed, static_cast<uint64_t>(i)));
    configs.push_back(draw_config(n, rngs.back()));
    tables.emplace_back(instance, configs.back());
    tracker.try_improve(tables.back().energy(), configs.back());
  }
  SplitMix64 exchange_rng(derive_stream(seed, 0x00ffffffull + 1));

  std::vector<int64_t> exchange_attempted(k - 1, 0);
  std::vector<int64_t> exchange_accepted(k - 1, 0);

  double last_marker = 0.0;
  for (int64_t e = 0;; ++e) {
    if (params.max_exchanges) {
      if (e >= *params.max_exchanges) break;
    } else if (seconds_since(t0) >= params.time_limit_seconds) {
      break;
    }
    for (int i = 0; i < k; ++i) {
      for (int s = 0; s < params.sweeps_per_exchange; ++s) {
        metropolis_sweep(tables[i], configs[i], temps[i], rngs[i],
                         counters[0], &tracker);
      }
    }
    for (int i = 0; i + 1 < k; ++i) {
      const double arg =
          (betas[i] - betas[i + 1]) *
          (tables[i].energy() - tables[i + 1].energy());
      const double p = std::min(1.0, std::exp(arg));
      exchange_attempted[i]++;
      if (exchange_rng.next_open01() < p) {
        std::swap(configs[i], configs[i + 1]);
        std::swap(tables[i], tables[i + 1]);
        exchange_accepted[i]++;
      }
    }
    const double now = seconds_since(t0);
    if (now - last_marker >= kHeartbeatSeconds) {
      tracker.heartbeat_marker();
      last_marker = now;
    }
  }

  const double elapsed = seconds_since(t0);
  RunResult result;
  result.solver_id = "pt";
  fill_result(instance, result, assemble_trace(blocks, elapsed), counters, elapsed);
  result.exchange_acceptance.resize(k - 1, 0.0);
  for (int i = 0; i + 1 < k; ++i) {
    if (exchange_attempted[i] > 0) {
      result.exchange_acceptance[i] =
          static_cast<double>(exchange_accepted[i]) / exchange_attempted[i];
    }
  }
  return result;
}

std::pair<int32_t, bool> select_tabu_move(const IndexTable& table,
                                          const std::vector<int64_t>& tabu_until,
                                          int64_t iteration,
                                          double current_energy,
                                          double best_energy) {
  const int32_t n = table.n_vars();
  int32_t admissible_var = -1;
  bool admissible_is_tabu = false;
  double admissible_delta = std::numeric_limits<double>::infinity();
  int32_t fallback_var = -1;
  double fallback_delta = std::numeric_limits<double>::infinity();
  for (int32_t var = 0; var < n; ++var) {
    const double delta = table.delta_energy(var);
    const bool tabu = tabu_until[var] > iteration;
    const bool aspirates = tabu && (current_energy + delta < best_energy);
    if (!tabu || aspirates) {
      if (delta < admissible_delta) {
        admissible_delta = delta;
        admissible_var = var;
        admissible_is_tabu = tabu;
      }
    } else if (delta < fallback_delta) {
      fallback_delta = delta;
      fallback_var = var;
    }
  }
  if (admissible_var >= 0) return {admissible_var, admissible_is_tabu};
  return {fallback_var, false};
}

namespace {

struct TabuOutcome {
  SpinConfig best_config;
  double best_energy;
};

// Recency-based tabu improvement: best admissible single flip per
// iteration, every applied move marks its variable tabu for `tenure`
// iterations. The search keeps its own best-seen configuration, which
// is what re-enters the population.
TabuOutcome tabu_improve(const HuboInstance& instance, SpinConfig& config,
                         int64_t iterations, int tenure,
                         double aspiration_best, FlipCounters& flips,
                         BestTracker& tracker) {
  IndexTable table(instance, config);
  TabuOutcome out{config, table.energy()};
  tracker.try_improve(table.energy(), config);
  double best_known = std::min(aspiration_best, out.best_energy);
  std::vector<int64_t> tabu_until(instance.n_vars(), 0);
  for (int64_t it = 0; it < iterations; ++it) {
    const int32_t var =
        select_tabu_move(table, tabu_until, it, table.energy(), best_known)
            .first;
    flips.attempted += instance.n_vars();
    if (var < 0) break;  // no move available (n == 0 cannot happen)
    const double energy = table.apply_flip(config, var);
    flips.accepted++;
    tabu_until[var] = it + 1 + tenure;
    if (energy < out.best_energy) {
      out.best_energy = energy;
      out.best_config = config;
      best_known = std::min(best_known, energy);
      tracker.try_improve(energy, config);
    }
  }
  return out;
}

}  // namespace

RunResult run_mts(const HuboInstance& instance, const MtsParams& params,
                  uint64_t seed, int n_threads) {
  if (params.population < 2) {
    throw std::invalid_argument(
        "MTS with crossover needs a population of at least 2");
  }
  if (params.generations < 0) {
    throw std::invalid_argument("generation count must be non-negative");
  }
  if (params.tabu_sweeps < 0) {
    throw std::invalid_argument("tabu sweep count must be non-negative");
  }
  if (params.elite_fraction < 0.0 || params.elite_fraction > 1.0) {
    throw std::invalid_argument("elite fraction must lie in [0, 1]");
  }
  const int32_t n = instance.n_vars();
  for (const SpinConfig& warm : params.initial_population) {
    if (static_cast<int32_t>(warm.size()) != n) {
      throw std::invalid_argument(
          "warm-start member length does not match instance");
    }
  }
  const int pop_size = params.population;
  const int tenure =
      params.tabu_tenure.value_or(static_cast<int>((n + 9) / 10));
  const double mutation_rate = params.mutation_rate.value_or(1.0 / n);
  const int64_t tabu_iterations =
      static_cast<int64_t>(params.tabu_sweeps) * n;
  int n_elites = static_cast<int>(
      std::lround(params.elite_fraction * pop_size));
  n_elites = std::clamp(n_elites, 1, pop_size - 1);
  const int n_offspring = pop_size - n_elites;

  const Clock::time_point t0 = Clock::now();
  const int workers = std::max(1, std::min(n_threads, pop_size));

  struct Member {
    SpinConfig config;
    double energy;
  };
  std::vector<Member> population(pop_size);

  // Per-slot trackers merged in slot order keep the ladder independent
  // of the worker count.
  std::vector<BestTracker> slot_trackers(pop_size, BestTracker(t0));
  std::vector<FlipCounters> slot_counters(pop_size);
  std::vector<BestTracker> merged(1, BestTracker(t0));
  BestTracker& run_tracker = merged[0];
  GlobalBestCell global_best;

  auto drain_slots = [&]() {
    for (int i = 0; i < pop_size; ++i) {
      BestTracker& s = slot_trackers[i];
      for (const detail::ImprovementEvent& ev : s.events) {
        if (ev.energy < run_tracker.best) {
          run_tracker.best = ev.energy;
          run_tracker.best_config = s.best_config;
          run_tracker.events.push_back(ev);
        }
      }
      s.events.clear();
    }
  };

  // Initialization: warm starts first, random fills after, every member
  // tabu-improved before the first generation.
  parallel_chunks(pop_size, workers, [&](int64_t begin, int64_t end, int) {
    for (int64_t m = begin; m < end; ++m) {
      SpinConfig config;
      if (m < static_cast<int64_t>(params.initial_population.size())) {
        config = params.initial_population[m];
      } else {
        SplitMix64 rng(derive_stream(seed, static_cast<uint64_t>(m)));
        config = draw_config(n, rng);
      }
      BestTracker tracker = std::move(slot_trackers[m]);
      FlipCounters flips = slot_counters[m];
      TabuOutcome out = tabu_improve(
          instance, config, tabu_iterations, tenure,
          std::numeric_limits<double>::infinity(), flips, tracker);
      population[m] = {out.best_config, out.best_energy};
      global_best.try_improve(out.best_energy);
      slot_trackers[m] = std::move(tracker);
      slot_counters[m] = flips;
    }
  });
  drain_slots();

  double last_marker = 0.0;
  for (int g = 1; g <= params.generations; ++g) {
    if (params.wall_clock_limit_seconds &&
        seconds_since(t0) >= *params.wall_clock_limit_seconds) {
      break;
    }
    // Aspiration threshold for this generation: best energy at its
    // start. Deterministic regardless of worker interleaving.
    double generation_best = std::numeric_limits<double>::infinity();
    for (const Member& m : population) {
      generation_best = std::min(generation_best, m.energy);
    }
    std::vector<Member> offspring(n_offspring);
    parallel_chunks(n_offspring, workers, [&](int64_t begin, int64_t end,
                                              int) {
      for (int64_t o = begin; o < end; ++o) {
        const uint64_t stream =
            static_cast<uint64_t>(g) * static_cast<uint64_t>(pop_size) +
            static_cast<uint64_t>(o) + static_cast<uint64_t>(pop_size);
        SplitMix64 rng(derive_stream(seed, stream));
        auto tournament = [&]() -> const Member& {
          const Member& a = population[rng.next_below(pop_size)];
          const Member& b = population[rng.next_below(pop_size)];
          return a.energy <= b.energy ? a : b;
        };
        const Member& pa = tournament();
        const Member& pb = tournament();
        SpinConfig child(n);
        for (int32_t i = 0; i < n; ++i) {
          child[i] = rng.next_bool() ? pa.config[i] : pb.config[i];
        }
        // Identical parents leave crossover with nothing to recombine;
        // unless the caller pinned the mutation rate, such children get
        // a heavy mutation so a converged population keeps exploring.
        double rate = mutation_rate;
        if (!params.mutation_rate && pa.config == pb.config) rate = 0.5;
        if (rate > 0.0) {
          for (int32_t i = 0; i < n; ++i) {
            if (rng.next_open01() < rate) {
              child[i] = static_cast<int8_t>(-child[i]);
            }
          }
        }
        BestTracker tracker = std::move(slot_trackers[o]);
        FlipCounters flips = slot_counters[o];
        TabuOutcome out = tabu_improve(instance, child, tabu_iterations,
                                       tenure, generation_best, flips,
                                       tracker);
        offspring[o] = {out.best_config, out.best_energy};
        global_best.try_improve(out.best_energy);
        slot_trackers[o] = std::move(tracker);
        slot_counters[o] = flips;
      }
    });
    drain_slots();

    // Elitist replacement: best n_elites survive, offspring fill the
    // rest. Stable sort keeps replacement deterministic under ties.
    std::stable_sort(population.begin(), population.end(),
                     [](const Member& a, const Member& b) {
                       return a.energy < b.energy;
                     });
    for (int i = 0; i < n_offspring; ++i) {
      population[n_elites + i] = std::move(offspring[i]);
    }
    const double now = seconds_since(t0);
    if (now - last_marker >= kHeartbeatSeconds) {
      run_tracker.heartbeat_marker();
      last_marker = now;
    }
  }

  const double elapsed = seconds_since(t0);
  RunResult result;
  result.solver_id = "mts";
  fill_result(instance, result, assemble_trace(merged, elapsed), slot_counters,
              elapsed);
  return result;
}

SpinConfig greedy_descent(const HuboInstance& instance,
                          const SpinConfig& start) {
  SpinConfig config = start;
  IndexTable table(instance, config);
  const int32_t n = instance.n_vars();
  for (;;) {
    int32_t best_var = -1;
    double best_delta = 0.0;
    for (int32_t var = 0; var < n; ++var) {
      const double delta = table.delta_energy(var);
      if (delta < best_delta) {
        best_delta = delta;
        best_var = var;
      }
    }
    if (best_var < 0) break;
    table.apply_flip(config, best_var);
  }
  return config;
}

RunResult run_greedy(const HuboInstance& instance, uint64_t seed) {
  const int32_t n = instance.n_vars();
  const Clock::time_point t0 = Clock::now();
  std::vector<BestTracker> blocks(1, BestTracker(t0));
  std::vector<FlipCounters> counters(1);
  SplitMix64 rng(derive_stream(seed, 0));
  SpinConfig config = draw_config(n, rng);
  IndexTable table(instance, config);
  blocks[0].try_improve(table.energy(), config);
  for (;;) {
    int32_t best_var = -1;
    double best_delta = 0.0;
    for (int32_t var = 0; var < n; ++var) {
      const double delta = table.delta_energy(var);
      counters[0].attempted++;
      if (delta < best_delta) {
        best_delta = delta;
        best_var = var;
      }
    }
    if (best_var < 0) break;
    const double energy = table.apply_flip(config, best_var);
    counters[0].accepted++;
    blocks[0].try_improve(energy, config);
  }
  const double elapsed = seconds_since(t0);
  RunResult result;
  result.solver_id = "greedy";
  fill_result(instance, result, assemble_trace(blocks, elapsed), counters, elapsed);
  return result;
}

RunResult run_solver(const HuboInstance& instance, const SolverConfig& config,
                     uint64_t seed, int n_threads) {
  RunResult result;
  if (config.kind == "sa") {
    result = run_sa(instance, config.sa, seed, n_threads);
  } else if (config.kind == "pt") {
    result = run_pt(instance, config.pt, seed);
  } else if (config.kind == "mts") {
    result = run_mts(instance, config.mts, seed, n_threads);
  } else if (config.kind == "greedy") {
    result = run_greedy(instance, seed);
  } else {
    throw std::invalid_argument("unknown solver kind \"" + config.kind +
                                "\"");
  }
  result.config_hash = config.hash();
  return result;
}

}  // namespace hubo
