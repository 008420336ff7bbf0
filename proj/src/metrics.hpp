#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "solvers.hpp"

namespace hubo {

struct SuccessCriterion {
  double e_target = 0.0;
  double epsilon = 1e-4;
  double p_target = 0.99;
};

struct PhitEstimate {
  double p_hit = 0.0;
  int64_t n_runs = 0;
  int64_t n_hits = 0;
};

// A run counts as a hit when best energy <= e_target + epsilon.
PhitEstimate estimate_p_hit(const std::vector<double>& best_energies,
                            const SuccessCriterion& criterion);
PhitEstimate estimate_p_hit(const std::vector<RunResult>& results,
                            const SuccessCriterion& criterion);

// Expected wall-clock to reach the target with probability p_target:
// t_run * ln(1 - p_target) / ln(1 - p_hit), applied as written, with
// two pinned boundary cases: p_hit = 0 gives +infinity and p_hit = 1
// gives t_run (one run suffices with certainty).
double compute_tts(double t_run, double p_hit, double p_target);

struct TTSResult {
  double t_run = 0.0;
  double p_hit = 0.0;
  double tts = 0.0;  // +infinity encodes the never-hit case
  int64_t n_runs = 0;
  int64_t n_hits = 0;

  bool is_infinite() const;
};

TTSResult compute_tts_result(double t_run, const PhitEstimate& estimate,
                             double p_target);

// Input group for the closeness computation: all traces of one
// instance plus that instance's target energy.
struct InstanceTraces {
  std::string instance_id;
  double e_target = 0.0;
  std::vector<std::vector<TraceEntry>> traces;
};

// Closeness ratio C(t) = E_best(t) / e_target on a shared time grid.
// Requires e_target < 0; with both energies negative the ratio climbs
// toward 1 from below and exceeds 1 once the target is surpassed.
// Step interpolation, last observation carried forward, never looking
// ahead; grid points before an instance's earliest sample are missing
// (NaN), not extrapolated.
struct ClosenessCurve {
  std::vector<double> grid;
  std::vector<std::string> instance_ids;
  // values[i][g]: instance i at grid point g; NaN marks missing.
  std::vector<std::vector<double>> values;
  std::vector<double> mean;   // across instances with defined values
  std::vector<double> sigma;  // population standard deviation
  std::vector<int> n_defined;
};

ClosenessCurve closeness_curve(const std::vector<InstanceTraces>& groups,
                               const std::vector<double>& grid);

// Log-spaced grid covering [t_min, t_max] of the given trace groups.
std::vector<double> default_time_grid(const std::vector<InstanceTraces>& groups,
                                      int n_points = 64);

// Geometric mean over the finite entries; infinities are excluded and
// counted (the dagger convention). value is empty when every entry is
// infinite.
struct GeometricMeanTTS {
  std::optional<double> value;
  int64_t n_finite = 0;
  int64_t excluded_infinite = 0;
};

GeometricMeanTTS geometric_mean_tts(const std::vector<double>& tts_values);

// Attempted flips per second.
double throughput(const RunResult& result);
double throughput(int64_t attempted_flips, double elapsed_seconds);

// Per-instance TTS ratios of solver b over solver a (ratio > 1 means a
// is faster). Doubles carry the infinite cases: fin/inf = 0, inf/fin =
// inf, inf/inf = NaN (undefined). A win for a is counted when a < b.
struct SpeedupEntry {
  std::string instance_id;
  double tts_a = 0.0;
  double tts_b = 0.0;
  double ratio = 0.0;  // tts_b / tts_a
  bool a_wins = false;
};

struct SpeedupTable {
  std::vector<SpeedupEntry> entries;
  int64_t wins_a = 0;
  int64_t wins_b = 0;
};

SpeedupTable speedup_table(
    const std::vector<std::pair<std::string, double>>& tts_a,
    const std::vector<std::pair<std::string, double>>& tts_b);

}  // namespace hubo
