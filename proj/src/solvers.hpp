#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "metropolis.hpp"
#include "model.hpp"

namespace hubo {

struct TraceEntry {
  double t_seconds;
  double energy;
  bool heartbeat = false;  // periodic marker, not an improvement
};

// Outcome of one solver execution. Trace energies are non-increasing
// and times strictly increasing; heartbeat entries restate the current
// best every >=10 ms so the trace covers the whole run. The energy
// sequence, configuration, and counters are reproducible for a fixed
// (config, seed, thread count); timestamps are measured.
struct RunResult {
  std::string solver_id;
  uint64_t config_hash = 0;
  double best_energy = 0.0;
  SpinConfig best_config;
  std::vector<TraceEntry> trace;
  int64_t attempted_flips = 0;
  int64_t accepted_flips = 0;
  double elapsed_seconds = 0.0;
  // PT only: replica-exchange acceptance rate per adjacent pair.
  std::vector<double> exchange_acceptance;
};

// Geometric interpolation between t_hot and t_cold over n_steps.
struct TemperatureSchedule {
  double t_hot = 1.0;
  double t_cold = 0.01;
  int n_steps = 1;

  double temperature(int step) const;
};

struct ScheduleParams {
  std::optional<double> t_hot;   // verbatim override
  std::optional<double> t_cold;  // verbatim override
  int n_steps = 500;
  int sample_configs = 32;
  uint64_t sample_seed = 0x5eed;
};

// |single-flip delta| over `n_configs` random configurations (all
// variables each); the sample make_schedule derives its percentiles
// from, exposed so the derivation can be checked independently.
std::vector<double> sample_abs_deltas(const HuboInstance& instance,
                                      uint64_t seed, int n_configs);

// Default endpoints from robust percentiles of the sampled |delta|:
// t_hot = P90 / ln 2 (a typical large uphill move starts 50% likely),
// t_cold = P10 / ln 100 (a typical small uphill move ends 1% likely).
// Percentiles are nearest-rank. Heavy-tailed couplings make max-based
// rules explode, hence percentiles. Explicit params are returned
// verbatim.
TemperatureSchedule make_schedule(const HuboInstance& instance,
                                  const ScheduleParams& params = {});

struct SaParams {
  int n_restarts = 1000;
  int sweeps = 500;
  ScheduleParams schedule;
  std::optional<double> wall_clock_limit_seconds;
};

struct PtParams {
  int n_replicas = 16;
  int sweeps_per_exchange = 1;
  double time_limit_seconds = 1.0;
  // Deterministic alternative to the wall-clock limit; when set, the
  // run executes exactly this many exchange intervals.
  std::optional<int64_t> max_exchanges;
  std::optional<double> t_hot;  // equal endpoints allowed (constant ladder)
  std::optional<double> t_cold;
  int schedule_sample_configs = 32;
};

struct MtsParams {
  int population = 10;
  int generations = 5000;
  std::optional<int> tabu_tenure;       // default ceil(N/10)
  int tabu_sweeps = 2;                  // tabu iterations = tabu_sweeps * N
  double elite_fraction = 0.1;
  std::optional<double> mutation_rate;  // default 1/N
  // Optional warm-start members; remaining slots are filled with random
  // configurations. Every member is tabu-improved before generation 1.
  std::vector<SpinConfig> initial_population;
  std::optional<double> wall_clock_limit_seconds;
};

// Independent annealing restarts with per-restart RNG streams; restarts
// are distributed over workers in contiguous blocks and merged in
// restart order, so the result does not depend on the thread count.
RunResult run_sa(const HuboInstance& instance, const SaParams& params,
                 uint64_t seed, int n_threads = 1);

// Replica exchange at fixed temperatures; configurations swap between
// adjacent pairs with probability min(1, exp((beta_a - beta_b) *
// (E_a - E_b))) after every exchange interval.
RunResult run_pt(const HuboInstance& instance, const PtParams& params,
                 uint64_t seed);

// Memetic tabu search: tournament parents, uniform crossover, mutation,
// tabu improvement of each offspring, elitist replacement.
RunResult run_mts(const HuboInstance& instance, const MtsParams& params,
                  uint64_t seed, int n_threads = 1);

// Steepest single-flip descent; ties break toward the lowest variable
// index. The result admits no improving single flip.
SpinConfig greedy_descent(const HuboInstance& instance,
                          const SpinConfig& start);

// Greedy descent from a seeded random start, packaged as a RunResult.
RunResult run_greedy(const HuboInstance& instance, uint64_t seed);

// Single tabu move selection: best non-tabu move, with the aspiration
// rule that a tabu move strictly improving on best_energy is admissible;
// if every move is tabu and none aspirates, the best tabu move is taken.
// Returns (variable, aspirated).
std::pair<int32_t, bool> select_tabu_move(const IndexTable& table,
                                          const std::vector<int64_t>& tabu_until,
                                          int64_t iteration,
                                          double current_energy,
                                          double best_energy);

// Tagged solver configuration with a canonical JSON form, used by the
// harness and the C API.
struct SolverConfig {
  std::string kind = "sa";  // sa | pt | mts | greedy
  SaParams sa;
  PtParams pt;
  MtsParams mts;

  static SolverConfig from_json_text(const std::string& text);
  std::string to_json_text() const;  // canonical: stable key order
  uint64_t hash() const;             // FNV-1a over the canonical form
};

RunResult run_solver(const HuboInstance& instance, const SolverConfig& config,
                     uint64_t seed, int n_threads = 1);

}  // namespace hubo
