#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "metrics.hpp"
#include "records.hpp"

namespace hubo {

// How the per-instance target energy is obtained.
//   oracle    - exhaustive ground state (desk-scale instances only)
//   best-of   - minimum energy over a designated solver's own records
//   explicit  - values carried in the spec
struct CriterionSpec {
  std::string source = "oracle";
  std::string designated_solver;               // best-of
  std::map<std::string, double> explicit_targets;  // per instance
  std::optional<double> explicit_value;            // uniform fallback
  double epsilon = 1e-4;
  double p_target = 0.99;
  int oracle_max_vars = 24;
};

struct SolverEntry {
  std::string id;           // row label in reports
  std::string config_json;  // solver or pipeline description
};

struct GenerationRecipe {
  std::string family = "3S";
  int count = 1;
  uint64_t seed = 0;
};

struct BenchmarkSpec {
  uint64_t seed = 0;
  int trials = 1;
  std::vector<std::string> instance_paths;
  std::optional<GenerationRecipe> generate;
  std::vector<SolverEntry> solvers;
  CriterionSpec criterion;
  std::string out_dir;
  int threads = 1;

  static BenchmarkSpec from_json_text(const std::string& text,
                                      const std::string& origin = "<spec>");
  static BenchmarkSpec from_json_file(const std::string& path);
  std::string to_json_text() const;  // effective spec echo
};

struct BenchOutcome {
  int executed_cells = 0;
  int skipped_cells = 0;
  bool already_complete = false;
  std::string records_path;
  std::string summary_path;
};

// Executes the (solver x instance x trial) grid with per-cell seeds
// derived from grid position, appending one record per cell. Completed
// cells found in the existing log are skipped, so an interrupted run
// resumes where it stopped and a finished run is a no-op. Summaries are
// recomputed from the full log afterwards.
BenchOutcome run_bench(const BenchmarkSpec& spec);

// Per-instance target energies with their provenance.
struct TargetInfo {
  double e_target = 0.0;
  std::string provenance;  // "oracle" | "best-of:<solver>" | "explicit"
};

std::map<std::string, TargetInfo> resolve_targets(
    const CriterionSpec& criterion,
    const std::map<std::string, HuboInstance>& instances,
    const std::vector<ResultRecord>& records);

// Derived summary, pure function of (records, targets, criterion).
struct CellSummary {
  std::string solver_id;
  std::string instance_id;
  int64_t n_runs = 0;
  int64_t n_hits = 0;
  double p_hit = 0.0;
  double t_run_mean_seconds = 0.0;
  double tts_seconds = 0.0;  // +inf when never hit
};

struct SolverSummary {
  std::string solver_id;
  int64_t n_instances = 0;
  int64_t n_finite = 0;
  int64_t n_infinite = 0;  // the dagger count
  double tts_min = 0.0;    // over finite entries
  double tts_max = 0.0;
  std::optional<double> tts_geometric_mean;
};

struct BenchSummary {
  double epsilon = 1e-4;
  double p_target = 0.99;
  std::map<std::string, TargetInfo> targets;
  std::vector<CellSummary> cells;
  std::vector<SolverSummary> solvers;
};

BenchSummary summarize(const std::vector<ResultRecord>& records,
                       const std::map<std::string, TargetInfo>& targets,
                       double epsilon, double p_target);

std::string summary_to_json(const BenchSummary& summary);
BenchSummary summary_from_json(const std::string& text);

// One-off solver execution persisted as a record; returns the record.
ResultRecord solve_once(const std::string& instance_path,
                        const std::string& config_json, uint64_t seed,
                        int n_threads, const std::string& out_dir);

// External result ingestion. Lines follow the documented trace schema
// {solver, instance_id, trial, elapsed_seconds, energy, spins?}; spins
// are re-evaluated against the instance and a relative mismatch beyond
// 1e-9 flags the record. Lines without spins import as unverifiable.
struct ImportOutcome {
  int accepted = 0;
  int flagged = 0;
  int unverifiable = 0;
  std::string records_path;
};

ImportOutcome import_traces(const std::string& trace_path,
                            const std::string& instance_path,
                            const std::string& solver_label,
                            const std::string& out_dir);

// Deterministic per-cell seed, a pure function of grid position.
uint64_t cell_seed(uint64_t spec_seed, size_t instance_index,
                   size_t solver_index, int trial, size_t n_solvers,
                   int trials);

// Writes `count` instances of the family plus a manifest with per-file
// term-count breakdowns into out_dir; byte-identical on rerun. Returns
// the manifest path.
std::string generate_to_dir(const std::string& family, int count,
                            uint64_t seed, const std::string& out_dir);

}  // namespace hubo
