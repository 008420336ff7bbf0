#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "model.hpp"
#include "solvers.hpp"

namespace hubo {

// Multiset of candidate configurations ordered by energy, truncated to
// the cap by dropping the worst. Duplicates are allowed (measurement
// ensembles repeat configurations).
class CandidatePool {
 public:
  struct Candidate {
    SpinConfig config;
    double energy;
  };

  explicit CandidatePool(size_t cap = 1024) : cap_(cap) {}

  void add(SpinConfig config, double energy);
  const Candidate& best() const;
  double best_energy() const { return best().energy; }
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  size_t cap() const { return cap_; }
  const std::vector<Candidate>& entries() const { return entries_; }

 private:
  size_t cap_;
  std::vector<Candidate> entries_;  // sorted by energy, ascending
};

// Thrown when a stage emits a pool whose best energy is worse than the
// incoming best (stages must pass the incumbent through).
struct ContractViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StageOutcome {
  CandidatePool pool;
  RunResult run;
};

// One pipeline stage: consumes the incoming candidate pool, produces an
// outgoing pool (never empty, incumbent passed through) plus the stage's
// RunResult with its own relative-time trace.
class Stage {
 public:
  virtual ~Stage() = default;
  virtual std::string label() const = 0;
  virtual StageOutcome run(const HuboInstance& instance,
                           const CandidatePool& incoming, uint64_t seed,
                           double budget_seconds) = 0;
};

// Runs a solver and folds its best configuration into the pool. MTS
// seeds its population from the incoming pool (warm start); SA, PT and
// greedy run independently of it. The stage budget tightens the
// solver's own wall-clock limit when the config has none.
std::unique_ptr<Stage> solver_stage(std::string label, SolverConfig config,
                                    int n_threads = 1);

enum class SurrogateKind {
  kIdentity,        // pool passes through untouched
  kPerturbRestart,  // incumbent plus n_copies spin-flipped copies
  kExternalTrace,   // candidates read from a result-record file
};

struct SurrogateParams {
  SurrogateKind kind = SurrogateKind::kIdentity;
  int n_copies = 32;              // perturb-restart
  double flip_probability = 0.05; // perturb-restart
  std::string trace_path;         // external-trace
};

std::unique_ptr<Stage> surrogate_stage(const SurrogateParams& params);

struct PipelineStageRecord {
  std::string label;
  double best_energy = 0.0;  // pool best after the stage
  double seconds = 0.0;
};

// run: the pipeline viewed as a single solver execution - merged trace
// across stages, summed flip counters, final best. stages: per-stage
// accounting under one monotonic clock; overhead_seconds is the part of
// the total not attributed to any stage.
struct PipelineResult {
  RunResult run;
  std::vector<PipelineStageRecord> stages;
  double overhead_seconds = 0.0;
  uint64_t seed = 0;
};

// Threads one candidate pool through the stages in order. The energy
// sequence across stages is non-increasing; a stage that breaks the
// incumbent pass-through contract aborts the pipeline with a
// ContractViolation naming it.
PipelineResult run_pipeline(const HuboInstance& instance,
                            const std::vector<std::shared_ptr<Stage>>& stages,
                            uint64_t seed,
                            const std::vector<double>& budgets_seconds,
                            size_t pool_cap = 1024);

// Stage list + budgets parsed from the JSON pipeline description used
// by the harness and the C API.
struct PipelineConfig {
  std::vector<std::shared_ptr<Stage>> stages;
  std::vector<double> budgets_seconds;
  size_t pool_cap = 1024;
  std::string config_json;  // canonical echo of the parsed description

  static PipelineConfig from_json_text(const std::string& text,
                                       int n_threads = 1);
};

PipelineResult run_pipeline(const HuboInstance& instance,
                            const PipelineConfig& config, uint64_t seed);

}  // namespace hubo
