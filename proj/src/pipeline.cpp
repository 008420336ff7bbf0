#include "pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "index_table.hpp"
#include "records.hpp"
#include "rng.hpp"

namespace hubo {

using detail::Clock;
using detail::seconds_since;

void CandidatePool::add(SpinConfig config, double energy) {
  Candidate c{std::move(config), energy};
  auto pos = std::upper_bound(
      entries_.begin(), entries_.end(), c,
      [](const Candidate& a, const Candidate& b) { return a.energy < b.energy; });
  entries_.insert(pos, std::move(c));
  if (entries_.size() > cap_) entries_.resize(cap_);
}

const CandidatePool::Candidate& CandidatePool::best() const {
  if (entries_.empty()) {
    throw std::logic_error("candidate pool is empty");
  }
  return entries_.front();
}

namespace {

RunResult synthesize_run(const std::string& solver_id,
                         const CandidatePool& pool, double elapsed) {
  RunResult run;
  run.solver_id = solver_id;
  run.best_energy = pool.best_energy();
  run.best_config = pool.best().config;
  run.trace.push_back({std::max(elapsed, 1e-9), run.best_energy, false});
  run.elapsed_seconds = elapsed;
  return run;
}

class SolverStage final : public Stage {
 public:
  SolverStage(std::string label, SolverConfig config, int n_threads)
      : label_(std::move(label)), config_(std::move(config)),
        n_threads_(n_threads) {}

  std::string label() const override { return label_; }

  StageOutcome run(const HuboInstance& instance, const CandidatePool& incoming,
                   uint64_t seed, double budget_seconds) override {
    SolverConfig cfg = config_;
    if (cfg.kind == "sa" && !cfg.sa.wall_clock_limit_seconds) {
      cfg.sa.wall_clock_limit_seconds = budget_seconds;
    } else if (cfg.kind == "mts") {
      if (!cfg.mts.wall_clock_limit_seconds) {
        cfg.mts.wall_clock_limit_seconds = budget_seconds;
      }
      // Warm start from the incoming pool, best candidates first.
      cfg.mts.initial_population.clear();
      const size_t take = std::min<size_t>(
          incoming.size(), static_cast<size_t>(cfg.mts.population));
      for (size_t i = 0; i < take; ++i) {
        cfg.mts.initial_population.push_back(incoming.entries()[i].config);
      }
    } else if (cfg.kind == "pt" && !cfg.pt.max_exchanges) {
      cfg.pt.time_limit_seconds =
          std::min(cfg.pt.time_limit_seconds, budget_seconds);
    }
    StageOutcome outcome{incoming, run_solver(instance, cfg, seed, n_threads_)};
    outcome.pool.add(outcome.run.best_config, outcome.run.best_energy);
    return outcome;
  }

 private:
  std::string label_;
  SolverConfig config_;
  int n_threads_;
};

class GreedyRefineStage final : public Stage {
 public:
  std::string label() const override { return "greedy-refine"; }

  StageOutcome run(const HuboInstance& instance, const CandidatePool& incoming,
                   uint64_t /*seed*/, double budget_seconds) override {
    const Clock::time_point t0 = Clock::now();
    StageOutcome outcome{incoming, RunResult{}};
    RunResult& run = outcome.run;
    run.solver_id = "greedy-refine";
    run.best_energy = incoming.best_energy();
    run.best_config = incoming.best().config;
    const int32_t n = instance.n_vars();
    size_t processed = 0;
    for (const CandidatePool::Candidate& c : incoming.entries()) {
      if (processed > 0 && seconds_since(t0) >= budget_seconds) break;
      processed++;
      SpinConfig refined = c.config;
      IndexTable table(instance, refined);
      for (;;) {
        int32_t best_var = -1;
        double best_delta = 0.0;
        for (int32_t var = 0; var < n; ++var) {
          const double delta = table.delta_energy(var);
          run.attempted_flips++;
          if (delta < best_delta) {
            best_delta = delta;
            best_var = var;
          }
        }
        if (best_var < 0) break;
        table.apply_flip(refined, best_var);
        run.accepted_flips++;
      }
      const double energy = evaluate_energy(instance, refined);
      if (energy < run.best_energy) {
        run.best_energy = energy;
        run.best_config = refined;
        run.trace.push_back({seconds_since(t0), energy, false});
      }
      outcome.pool.add(std::move(refined), energy);
    }
    if (run.trace.empty()) {
      run.trace.push_back({1e-9, run.best_energy, false});
    }
    run.elapsed_seconds = seconds_since(t0);
    return outcome;
  }
};

class SurrogateStage final : public Stage {
 public:
  explicit SurrogateStage(SurrogateParams params) : params_(params) {}

  std::string label() const override {
    switch (params_.kind) {
      case SurrogateKind::kIdentity: return "surrogate-identity";
      case SurrogateKind::kPerturbRestart: return "surrogate-perturb";
      case SurrogateKind::kExternalTrace: return "surrogate-external";
    }
    return "surrogate";
  }

  StageOutcome run(const HuboInstance& instance, const CandidatePool& incoming,
                   uint64_t seed, double /*budget_seconds*/) override {
    const Clock::time_point t0 = Clock::now();
    StageOutcome outcome{incoming, RunResult{}};
    switch (params_.kind) {
      case SurrogateKind::kIdentity:
        break;
      case SurrogateKind::kPerturbRestart: {
        SplitMix64 rng(derive_stream(seed, 0));
        const SpinConfig& incumbent = incoming.best().config;
        for (int m = 0; m < params_.n_copies; ++m) {
          SpinConfig copy = incumbent;
          for (auto& s : copy) {
            if (rng.next_open01() < params_.flip_probability) {
              s = static_cast<int8_t>(-s);
            }
          }
          const double energy = evaluate_energy(instance, copy);
          outcome.pool.add(std::move(copy), energy);
        }
        break;
      }
      case SurrogateKind::kExternalTrace: {
        for (const ResultRecord& rec : read_records(params_.trace_path)) {
          if (rec.run.best_config.empty()) continue;
          if (static_cast<int32_t>(rec.run.best_config.size()) !=
              instance.n_vars()) {
            throw std::invalid_argument(
                "external-trace candidate length " +
                std::to_string(rec.run.best_config.size()) +
                " does not match instance with " +
                std::to_string(instance.n_vars()) + " variables");
          }
          // Stored energies are advisory; candidates re-enter at their
          // re-evaluated energy.
          outcome.pool.add(rec.run.best_config,
                           evaluate_energy(instance, rec.run.best_config));
        }
        break;
      }
    }
    outcome.run = synthesize_run(label(), outcome.pool, seconds_since(t0));
    return outcome;
  }

 private:
  SurrogateParams params_;
};

// The pipeline's merged trace: stage traces shifted onto the pipeline
// clock, filtered to global improvements, heartbeats restated at the
// prevailing best.
void merge_stage_trace(RunResult& merged, const RunResult& stage_run,
                       double stage_offset) {
  for (const TraceEntry& e : stage_run.trace) {
    const double t = stage_offset + e.t_seconds;
    if (!e.heartbeat && e.energy < merged.best_energy) {
      merged.best_energy = e.energy;
      merged.trace.push_back({t, e.energy, false});
    } else if (e.heartbeat && !merged.trace.empty()) {
      merged.trace.push_back({t, merged.best_energy, true});
    }
  }
}

}  // namespace

std::unique_ptr<Stage> solver_stage(std::string label, SolverConfig config,
                                    int n_threads) {
  return std::make_unique<SolverStage>(std::move(label), std::move(config),
                                       n_threads);
}

std::unique_ptr<Stage> surrogate_stage(const SurrogateParams& params) {
  if (params.kind == SurrogateKind::kPerturbRestart) {
    if (params.n_copies < 0 || params.flip_probability < 0.0 ||
        params.flip_probability > 1.0) {
      throw std::invalid_argument(
          "perturb-restart needs n_copies >= 0 and flip probability in "
          "[0, 1]");
    }
  }
  if (params.kind == SurrogateKind::kExternalTrace &&
      params.trace_path.empty()) {
    throw std::invalid_argument("external-trace surrogate needs a file path");
  }
  return std::make_unique<SurrogateStage>(params);
}

PipelineResult run_pipeline(const HuboInstance& instance,
                            const std::vector<std::shared_ptr<Stage>>& stages,
                            uint64_t seed,
                            const std::vector<double>& budgets_seconds,
                            size_t pool_cap) {
  if (stages.empty()) {
    throw std::invalid_argument("pipeline needs at least one stage");
  }
  if (budgets_seconds.size() != stages.size()) {
    throw std::invalid_argument(
        "pipeline needs exactly one budget per stage");
  }
  for (double b : budgets_seconds) {
    if (!(b > 0.0)) {
      throw std::invalid_argument("stage budgets must be positive");
    }
  }
  if (pool_cap < 1) {
    throw std::invalid_argument("pool capacity must be at least 1");
  }

  const Clock::time_point t0 = Clock::now();
  PipelineResult result;
  result.seed = seed;
  result.run.solver_id = "pipeline";
  result.run.best_energy = std::numeric_limits<double>::infinity();

  CandidatePool pool(pool_cap);
  {
    SpinConfig start =
        random_config(instance.n_vars(), derive_stream(seed, 0));
    pool.add(start, evaluate_energy(instance, start));
  }
  merge_stage_trace(result.run,
                    synthesize_run("seed", pool, seconds_since(t0)), 0.0);

  double stage_seconds_sum = 0.0;
  for (size_t k = 0; k < stages.size(); ++k) {
    const double incoming_best = pool.best_energy();
    const double stage_offset = seconds_since(t0);
    StageOutcome outcome = stages[k]->run(
        instance, pool, derive_stream(seed, k + 1), budgets_seconds[k]);
    const double stage_seconds = seconds_since(t0) - stage_offset;

    if (outcome.pool.empty()) {
      throw ContractViolation("stage \"" + stages[k]->label() +
                              "\" emitted an empty candidate pool");
    }
    if (outcome.pool.best_energy() > incoming_best) {
      throw ContractViolation(
          "stage \"" + stages[k]->label() +
          "\" lost the incumbent: outgoing best " +
          std::to_string(outcome.pool.best_energy()) +
          " is worse than incoming best " + std::to_string(incoming_best));
    }
    pool = std::move(outcome.pool);

    merge_stage_trace(result.run, outcome.run, stage_offset);
    result.run.attempted_flips += outcome.run.attempted_flips;
    result.run.accepted_flips += outcome.run.accepted_flips;
    result.stages.push_back(
        {stages[k]->label(), pool.best_energy(), stage_seconds});
    stage_seconds_sum += stage_seconds;
  }

  result.run.best_energy = pool.best_energy();
  result.run.best_config = pool.best().config;
  result.run.elapsed_seconds = seconds_since(t0);
  result.overhead_seconds = result.run.elapsed_seconds - stage_seconds_sum;
  // Monotone fix-up: stage traces carry measured times.
  for (size_t i = 1; i < result.run.trace.size(); ++i) {
    result.run.trace[i].t_seconds = std::max(
        result.run.trace[i].t_seconds,
        result.run.trace[i - 1].t_seconds + 1e-9);
  }
  return result;
}

PipelineConfig PipelineConfig::from_json_text(const std::string& text,
                                              int n_threads) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("pipeline config: ") + e.what());
  }
  if (!doc.is_object() || doc.value("kind", std::string()) != "pipeline" ||
      !doc.contains("stages") || !doc["stages"].is_array() ||
      doc["stages"].empty()) {
    throw std::invalid_argument(
        "pipeline config must be {\"kind\": \"pipeline\", \"stages\": "
        "[...]} with at least one stage");
  }
  PipelineConfig cfg;
  cfg.pool_cap = doc.value("pool_cap", size_t{1024});
  std::ostringstream canonical;
  canonical << "{\"kind\": \"pipeline\", \"pool_cap\": " << cfg.pool_cap
            << ", \"stages\": [";
  bool first = true;
  for (const json& s : doc["stages"]) {
    if (!s.is_object() || !s.contains("stage")) {
      throw std::invalid_argument(
          "each pipeline stage needs a \"stage\" field");
    }
    const std::string stage_kind = s["stage"].get<std::string>();
    const double budget = s.value("budget_seconds", 1.0);
    cfg.budgets_seconds.push_back(budget);
    std::string stage_desc;
    if (stage_kind == "sa" || stage_kind == "pt" || stage_kind == "mts" ||
        stage_kind == "greedy") {
      if (stage_kind == "greedy") {
        cfg.stages.push_back(std::make_shared<GreedyRefineStage>());
        stage_desc = "{\"stage\": \"greedy\"}";
      } else {
        json solver = s;
        solver.erase("stage");
        solver.erase("budget_seconds");
        solver["kind"] = stage_kind;
        SolverConfig sc = SolverConfig::from_json_text(solver.dump());
        stage_desc = "{\"stage\": \"" + stage_kind +
                     "\", \"solver\": " + sc.to_json_text() + "}";
        cfg.stages.push_back(std::shared_ptr<Stage>(
            solver_stage(stage_kind + "-stage", std::move(sc), n_threads)));
      }
    } else if (stage_kind == "surrogate") {
      SurrogateParams p;
      const std::string kind = s.value("surrogate", std::string("identity"));
      if (kind == "identity") {
        p.kind = SurrogateKind::kIdentity;
      } else if (kind == "perturb-restart") {
        p.kind = SurrogateKind::kPerturbRestart;
        p.n_copies = s.value("n_copies", p.n_copies);
        p.flip_probability = s.value("flip_probability", p.flip_probability);
      } else if (kind == "external-trace") {
        p.kind = SurrogateKind::kExternalTrace;
        p.trace_path = s.value("trace_file", std::string());
      } else {
        throw std::invalid_argument("unknown surrogate kind \"" + kind +
                                    "\"");
      }
      cfg.stages.push_back(std::shared_ptr<Stage>(surrogate_stage(p)));
      stage_desc = "{\"stage\": \"surrogate\", \"surrogate\": \"" + kind +
                   "\"}";
    } else {
      throw std::invalid_argument("unknown pipeline stage \"" + stage_kind +
                                  "\"");
    }
    canonical << (first ? "" : ", ") << stage_desc;
    first = false;
  }
  canonical << "]}";
  cfg.config_json = canonical.str();
  return cfg;
}

PipelineResult run_pipeline(const HuboInstance& instance,
                            const PipelineConfig& config, uint64_t seed) {
  return run_pipeline(instance, config.stages, seed, config.budgets_seconds,
                      config.pool_cap);
}

}  // namespace hubo
