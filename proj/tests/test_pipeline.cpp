#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "generator.hpp"
#include "model.hpp"
#include "oracle.hpp"
#include "pipeline.hpp"
#include "records.hpp"
#include "reference.hpp"

using namespace hubo;

namespace {

// A stage that drops the incumbent on purpose.
class IncumbentLoser final : public Stage {
 public:
  std::string label() const override { return "incumbent-loser"; }
  StageOutcome run(const HuboInstance& instance, const CandidatePool& incoming,
                   uint64_t, double) override {
    StageOutcome out{CandidatePool(incoming.cap()), RunResult{}};
    SpinConfig worst = all_plus(instance.n_vars());
    out.pool.add(worst, evaluate_energy(instance, worst));
    out.run = RunResult{};
    out.run.solver_id = label();
    out.run.best_energy = out.pool.best_energy();
    out.run.best_config = out.pool.best().config;
    out.run.trace.push_back({1e-9, out.run.best_energy, false});
    return out;
  }
};

}  // namespace

TEST_CASE("candidate pool keeps the best under truncation") {
  CandidatePool pool(3);
  pool.add({1, 1}, 5.0);
  pool.add({1, -1}, -1.0);
  pool.add({-1, 1}, 2.0);
  pool.add({-1, -1}, 0.0);
  CHECK(pool.size() == 3);
  CHECK(pool.best_energy() == -1.0);
  CHECK(pool.entries()[2].energy == 2.0);  // 5.0 truncated away
}

TEST_CASE("single greedy stage finds the pair ground state") {
  HuboInstance inst(2, {Term({0, 1}, 1.0)});
  PipelineConfig cfg = PipelineConfig::from_json_text(
      R"({"kind": "pipeline", "stages": [{"stage": "greedy"}]})");
  PipelineResult result = run_pipeline(inst, cfg, 7);
  CHECK(result.run.best_energy == doctest::Approx(-1.0));
  CHECK(result.stages.size() == 1);
  CHECK(result.stages[0].label == "greedy-refine");
}

TEST_CASE("three-stage pipeline is stage-monotonic and hits the oracle") {
  HuboInstance inst = random_instance(18, 70, 5);
  GroundState gs = brute_force_ground_state(inst);
  PipelineConfig cfg = PipelineConfig::from_json_text(R"({
    "kind": "pipeline",
    "stages": [
      {"stage": "sa", "n_restarts": 80, "sweeps": 150, "budget_seconds": 30},
      {"stage": "surrogate", "surrogate": "identity"},
      {"stage": "greedy"}
    ]
  })");
  PipelineResult result = run_pipeline(inst, cfg, 11);
  REQUIRE(result.stages.size() == 3);
  for (size_t i = 1; i < result.stages.size(); ++i) {
    CHECK(result.stages[i].best_energy <= result.stages[i - 1].best_energy);
  }
  CHECK(huboref::rel_close(result.run.best_energy, gs.energy, 1e-9));
  CHECK(huboref::rel_close(
      huboref::ref_energy(inst, result.run.best_config),
      result.run.best_energy, 1e-9));
  // Accounting: stage durations never exceed the total.
  double stage_sum = 0.0;
  for (const auto& s : result.stages) stage_sum += s.seconds;
  CHECK(stage_sum <= result.run.elapsed_seconds);
  CHECK(result.overhead_seconds >= 0.0);
  // Merged trace behaves like a RunResult trace.
  for (size_t i = 1; i < result.run.trace.size(); ++i) {
    CHECK(result.run.trace[i].t_seconds >
          result.run.trace[i - 1].t_seconds);
    CHECK(result.run.trace[i].energy <= result.run.trace[i - 1].energy);
  }
}

TEST_CASE("identity surrogate passes the pool through untouched") {
  HuboInstance inst = random_instance(10, 30, 9);
  auto stage = surrogate_stage({});
  CandidatePool incoming(8);
  for (uint64_t s = 0; s < 4; ++s) {
    SpinConfig c = random_config(10, s);
    incoming.add(c, evaluate_energy(inst, c));
  }
  StageOutcome out = stage->run(inst, incoming, 1, 1.0);
  REQUIRE(out.pool.size() == incoming.size());
  for (size_t i = 0; i < incoming.size(); ++i) {
    CHECK(out.pool.entries()[i].config == incoming.entries()[i].config);
    CHECK(out.pool.entries()[i].energy == incoming.entries()[i].energy);
  }
}

TEST_CASE("perturb-restart with zero flip probability clones the incumbent") {
  HuboInstance inst = random_instance(10, 30, 13);
  SurrogateParams p;
  p.kind = SurrogateKind::kPerturbRestart;
  p.n_copies = 5;
  p.flip_probability = 0.0;
  auto stage = surrogate_stage(p);
  CandidatePool incoming(16);
  SpinConfig c = random_config(10, 3);
  incoming.add(c, evaluate_energy(inst, c));
  StageOutcome out = stage->run(inst, incoming, 1, 1.0);
  CHECK(out.pool.size() == 6);
  for (const auto& cand : out.pool.entries()) {
    CHECK(cand.config == c);
  }
}

TEST_CASE("external-trace surrogate injects re-evaluated candidates") {
  namespace fs = std::filesystem;
  HuboInstance inst = random_instance(12, 40, 17);
  GroundState gs = brute_force_ground_state(inst);

  const fs::path dir = fs::temp_directory_path() / "hubo_pipeline_test";
  fs::create_directories(dir);
  const std::string trace_path = (dir / "external.ndjson").string();
  {
    ResultRecord rec;
    rec.kind = "imported";
    rec.instance_id = "ext";
    rec.solver_id = "recorded";
    rec.run.solver_id = "recorded";
    rec.run.best_config = gs.config;
    rec.run.best_energy = 0.0;  // wrong on purpose; stage must re-evaluate
    rec.run.trace.push_back({1e-3, 0.0, false});
    rec.run.elapsed_seconds = 1e-3;
    std::ofstream out(trace_path);
    out << record_to_json_line(rec) << "\n";
  }

  SurrogateParams p;
  p.kind = SurrogateKind::kExternalTrace;
  p.trace_path = trace_path;
  auto stage = surrogate_stage(p);
  CandidatePool incoming(16);
  SpinConfig start = random_config(12, 21);
  incoming.add(start, evaluate_energy(inst, start));
  StageOutcome out = stage->run(inst, incoming, 1, 1.0);
  CHECK(out.pool.best_energy() == doctest::Approx(gs.energy));
  CHECK(out.run.best_energy == doctest::Approx(gs.energy));

  // Dimension mismatch is rejected.
  HuboInstance other = random_instance(9, 20, 23);
  CandidatePool incoming2(4);
  SpinConfig start2 = random_config(9, 2);
  incoming2.add(start2, evaluate_energy(other, start2));
  CHECK_THROWS_AS(stage->run(other, incoming2, 1, 1.0),
                  std::invalid_argument);
  fs::remove_all(dir);
}

TEST_CASE("a stage losing the incumbent aborts the pipeline by name") {
  // Fields +1 everywhere: all-plus is the worst configuration, and the
  // greedy stage first walks to the unique optimum.
  std::vector<Term> terms;
  for (int i = 0; i < 12; ++i) terms.push_back(Term({i}, 1.0));
  HuboInstance inst(12, terms);
  std::vector<std::shared_ptr<Stage>> stages;
  PipelineConfig greedy_only = PipelineConfig::from_json_text(
      R"({"kind": "pipeline", "stages": [{"stage": "greedy"}]})");
  stages.push_back(greedy_only.stages[0]);
  stages.push_back(std::make_shared<IncumbentLoser>());
  CHECK_THROWS_WITH_AS(
      run_pipeline(inst, stages, 3, {1.0, 1.0}),
      doctest::Contains("incumbent-loser"), ContractViolation);
}

TEST_CASE("removing a trailing stage leaves the prefix untouched") {
  HuboInstance inst = random_instance(14, 45, 29);
  const std::string two_stage = R"({
    "kind": "pipeline",
    "stages": [
      {"stage": "sa", "n_restarts": 10, "sweeps": 50, "budget_seconds": 30},
      {"stage": "surrogate", "surrogate": "perturb-restart", "n_copies": 8}
    ]
  })";
  const std::string three_stage = R"({
    "kind": "pipeline",
    "stages": [
      {"stage": "sa", "n_restarts": 10, "sweeps": 50, "budget_seconds": 30},
      {"stage": "surrogate", "surrogate": "perturb-restart", "n_copies": 8},
      {"stage": "greedy"}
    ]
  })";
  PipelineResult a =
      run_pipeline(inst, PipelineConfig::from_json_text(two_stage), 31);
  PipelineResult b =
      run_pipeline(inst, PipelineConfig::from_json_text(three_stage), 31);
  REQUIRE(a.stages.size() == 2);
  REQUIRE(b.stages.size() == 3);
  for (size_t i = 0; i < 2; ++i) {
    CHECK(a.stages[i].label == b.stages[i].label);
    CHECK(a.stages[i].best_energy == b.stages[i].best_energy);
  }
}

TEST_CASE("pipeline validation errors") {
  HuboInstance inst = random_instance(8, 15, 1);
  std::vector<std::shared_ptr<Stage>> none;
  CHECK_THROWS_AS(run_pipeline(inst, none, 1, {}), std::invalid_argument);

  PipelineConfig cfg = PipelineConfig::from_json_text(
      R"({"kind": "pipeline", "stages": [{"stage": "greedy"}]})");
  CHECK_THROWS_AS(run_pipeline(inst, cfg.stages, 1, {1.0, 2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_pipeline(inst, cfg.stages, 1, {-1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(PipelineConfig::from_json_text(R"({"kind": "pipeline"})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      PipelineConfig::from_json_text(
          R"({"kind": "pipeline", "stages": [{"stage": "mystery"}]})"),
      std::invalid_argument);
}
