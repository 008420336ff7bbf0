#include "metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace hubo {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}  // namespace

PhitEstimate estimate_p_hit(const std::vector<double>& best_energies,
                            const SuccessCriterion& criterion) {
  if (best_energies.empty()) {
    throw std::invalid_argument("p_hit needs at least one run");
  }
  if (criterion.epsilon < 0.0) {
    throw std::invalid_argument("epsilon must be non-negative");
  }
  PhitEstimate est;
  est.n_runs = static_cast<int64_t>(best_energies.size());
  for (double e : best_energies) {
    if (e <= criterion.e_target + criterion.epsilon) est.n_hits++;
  }
  est.p_hit = static_cast<double>(est.n_hits) / est.n_runs;
  return est;
}

PhitEstimate estimate_p_hit(const std::vector<RunResult>& results,
                            const SuccessCriterion& criterion) {
  std::vector<double> energies;
  energies.reserve(results.size());
  for (const RunResult& r : results) energies.push_back(r.best_energy);
  return estimate_p_hit(energies, criterion);
}

double compute_tts(double t_run, double p_hit, double p_target) {
  if (!(t_run > 0.0)) {
    throw std::invalid_argument("t_run must be positive");
  }
  if (!(p_hit >= 0.0 && p_hit <= 1.0)) {
    throw std::invalid_argument("p_hit must lie in [0, 1]");
  }
  if (!(p_target > 0.0 && p_target < 1.0)) {
    throw std::invalid_argument("p_target must lie in (0, 1)");
  }
  if (p_hit == 0.0) return kInf;
  if (p_hit == 1.0) return t_run;
  return t_run * std::log(1.0 - p_target) / std::log(1.0 - p_hit);
}

bool TTSResult::is_infinite() const { return std::isinf(tts); }

TTSResult compute_tts_result(double t_run, const PhitEstimate& estimate,
                             double p_target) {
  TTSResult out;
  out.t_run = t_run;
  out.p_hit = estimate.p_hit;
  out.n_runs = estimate.n_runs;
  out.n_hits = estimate.n_hits;
  out.tts = compute_tts(t_run, estimate.p_hit, p_target);
  return out;
}

namespace {

// Best-so-far at time t under last-observation-carried-forward; NaN
// when the trace has no sample at or before t.
double trace_value_at(const std::vector<TraceEntry>& trace, double t) {
  if (trace.empty() || t < trace.front().t_seconds) return kNaN;
  // Binary search for the last entry with t_seconds <= t.
  size_t lo = 0, hi = trace.size();
  while (hi - lo > 1) {
    const size_t mid = (lo + hi) / 2;
    if (trace[mid].t_seconds <= t) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return trace[lo].energy;
}

}  // namespace

ClosenessCurve closeness_curve(const std::vector<InstanceTraces>& groups,
                               const std::vector<double>& grid) {
  if (groups.empty()) {
    throw std::invalid_argument("closeness needs at least one instance");
  }
  if (grid.empty()) {
    throw std::invalid_argument("closeness needs a non-empty time grid");
  }
  for (size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("time grid must be strictly increasing");
    }
  }
  for (const InstanceTraces& g : groups) {
    if (g.traces.empty()) {
      throw std::invalid_argument("instance " + g.instance_id +
                                  " has no traces");
    }
    if (!(g.e_target < 0.0)) {
      throw std::invalid_argument(
          "closeness ratio requires e_target < 0 (instance " +
          g.instance_id +
          "); for non-negative targets use the energy gap "
          "e_best - e_target instead");
    }
  }

  ClosenessCurve curve;
  curve.grid = grid;
  curve.values.resize(groups.size());
  for (size_t i = 0; i < groups.size(); ++i) {
    curve.instance_ids.push_back(groups[i].instance_id);
    auto& row = curve.values[i];
    row.resize(grid.size(), kNaN);
    for (size_t g = 0; g < grid.size(); ++g) {
      double best = kNaN;
      for (const auto& trace : groups[i].traces) {
        const double v = trace_value_at(trace, grid[g]);
        if (std::isnan(v)) continue;
        if (std::isnan(best) || v < best) best = v;
      }
      if (!std::isnan(best)) row[g] = best / groups[i].e_target;
    }
  }

  curve.mean.resize(grid.size(), kNaN);
  curve.sigma.resize(grid.size(), kNaN);
  curve.n_defined.resize(grid.size(), 0);
  for (size_t g = 0; g < grid.size(); ++g) {
    double sum = 0.0;
    int n = 0;
    for (const auto& row : curve.values) {
      if (!std::isnan(row[g])) {
        sum += row[g];
        n++;
      }
    }
    curve.n_defined[g] = n;
    if (n == 0) continue;
    const double mean = sum / n;
    double var = 0.0;
    for (const auto& row : curve.values) {
      if (!std::isnan(row[g])) {
        const double d = row[g] - mean;
        var += d * d;
      }
    }
    curve.mean[g] = mean;
    curve.sigma[g] = std::sqrt(var / n);  // population sigma
  }
  return curve;
}

std::vector<double> default_time_grid(const std::vector<InstanceTraces>& groups,
                                      int n_points) {
  if (n_points < 2) {
    throw std::invalid_argument("time grid needs at least two points");
  }
  double t_min = kInf;
  double t_max = -kInf;
  for (const InstanceTraces& g : groups) {
    for (const auto& trace : g.traces) {
      if (trace.empty()) continue;
      t_min = std::min(t_min, trace.front().t_seconds);
      t_max = std::max(t_max, trace.back().t_seconds);
    }
  }
  if (!(t_min < kInf) || !(t_max > t_min)) {
    // Degenerate coverage: a flat two-point grid around the only time.
    if (!(t_min < kInf)) {
      throw std::invalid_argument("no trace samples to build a grid from");
    }
    return {t_min, t_min + 1e-6};
  }
  // Log spacing needs a positive start.
  const double lo = std::max(t_min, 1e-9);
  const double hi = std::max(t_max, lo * (1.0 + 1e-9));
  std::vector<double> grid;
  grid.reserve(n_points + 1);
  if (t_min < lo) grid.push_back(t_min);
  for (int i = 0; i < n_points; ++i) {
    const double frac = static_cast<double>(i) / (n_points - 1);
    const double t = lo * std::pow(hi / lo, frac);
    if (grid.empty() || t > grid.back()) grid.push_back(t);
  }
  return grid;
}

GeometricMeanTTS geometric_mean_tts(const std::vector<double>& tts_values) {
  if (tts_values.empty()) {
    throw std::invalid_argument("geometric mean needs at least one value");
  }
  GeometricMeanTTS out;
  double log_sum = 0.0;
  for (double v : tts_values) {
    if (std::isinf(v)) {
      out.excluded_infinite++;
      continue;
    }
    if (!(v > 0.0)) {
      throw std::invalid_argument("finite TTS values must be positive");
    }
    log_sum += std::log(v);
    out.n_finite++;
  }
  if (out.n_finite > 0) {
    out.value = std::exp(log_sum / out.n_finite);
  }
  return out;
}

double throughput(int64_t attempted_flips, double elapsed_seconds) {
  if (!(elapsed_seconds > 0.0)) {
    throw std::invalid_argument("throughput needs a positive elapsed time");
  }
  return static_cast<double>(attempted_flips) / elapsed_seconds;
}

double throughput(const RunResult& result) {
  return throughput(result.attempted_flips, result.elapsed_seconds);
}

SpeedupTable speedup_table(
    const std::vector<std::pair<std::string, double>>& tts_a,
    const std::vector<std::pair<std::string, double>>& tts_b) {
  std::map<std::string, double> b_by_id(tts_b.begin(), tts_b.end());
  if (tts_a.size() != b_by_id.size() || tts_a.size() != tts_b.size()) {
    throw std::invalid_argument("speedup inputs must share instance keys");
  }
  SpeedupTable table;
  for (const auto& [id, a] : tts_a) {
    auto it = b_by_id.find(id);
    if (it == b_by_id.end()) {
      throw std::invalid_argument("speedup inputs must share instance keys; "
                                  "missing \"" + id + "\"");
    }
    const double b = it->second;
    SpeedupEntry entry;
    entry.instance_id = id;
    entry.tts_a = a;
    entry.tts_b = b;
    entry.ratio = b / a;  // fin/inf = 0, inf/fin = inf, inf/inf = NaN
    entry.a_wins = a < b;
    if (entry.a_wins) table.wins_a++;
    if (b < a) table.wins_b++;
    table.entries.push_back(std::move(entry));
  }
  return table;
}

}  // namespace hubo
