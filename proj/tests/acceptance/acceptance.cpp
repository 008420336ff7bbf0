// Acceptance suite: ten numbered criteria, each printing exactly one
// [PASS]/[FAIL] line. Run with no arguments for all criteria or with a
// list of criterion numbers. Exits nonzero if any selected criterion
// fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bench.hpp"
#include "generator.hpp"
#include "heavy_hex.hpp"
#include "index_table.hpp"
#include "instance_io.hpp"
#include "metrics.hpp"
#include "oracle.hpp"
#include "parallel.hpp"
#include "pipeline.hpp"
#include "records.hpp"
#include "report.hpp"
#include "rng.hpp"
#include "solvers.hpp"
#include "swap_schedule.hpp"

using namespace hubo;
namespace fs = std::filesystem;

namespace {

struct Check {
  std::vector<std::string> failures;

  void require(bool ok, const std::string& detail) {
    if (!ok) failures.push_back(detail);
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

bool rel_close(double a, double b, double tol) {
  const double diff = std::abs(a - b);
  return diff <= tol * std::max(std::abs(a), std::abs(b)) || diff <= tol;
}

fs::path scratch_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("hubo_acceptance_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// ---- C1: time-to-solution formula ---------------------------------

void c1_tts_exactness(Check& check) {
  check.require(compute_tts(1.0, 0.99, 0.99) == 1.0,
                "tts(1s, p_hit=0.99, p_target=0.99) must equal 1s exactly");
  const double mid = compute_tts(1.0, 0.5, 0.99);
  check.require(std::abs(mid - 6.6439) <= 1e-3,
                "tts(1s, 0.5, 0.99) = " + fmt(mid) +
                    " outside 6.6439 +/- 1e-3");
  check.require(std::isinf(compute_tts(1.0, 0.0, 0.99)),
                "p_hit = 0 must give an infinite TTS");
}

// ---- C2: incremental evaluation ------------------------------------

void c2_delta_energy(Check& check) {
  int64_t delta_checks = 0;
  for (int k = 0; k < 200; ++k) {
    const int32_t n = 6 + (k % 15);  // 6..20 variables
    HuboInstance inst = random_instance(n, 3 * n, 9000 + k);
    SpinConfig config = random_config(n, 500 + k);
    IndexTable table(inst, config);
    const double base = evaluate_energy(inst, config);
    for (int32_t v = 0; v < n; ++v) {
      SpinConfig flipped = config;
      flipped[v] = static_cast<int8_t>(-flipped[v]);
      const double expected = evaluate_energy(inst, flipped) - base;
      if (!rel_close(table.delta_energy(v), expected, 1e-12)) {
        check.require(false, "delta mismatch on instance " +
                                 std::to_string(k) + " variable " +
                                 std::to_string(v));
        return;
      }
      delta_checks++;
    }
    SplitMix64 rng(700 + k);
    for (int step = 0; step < 10000; ++step) {
      table.apply_flip(config, static_cast<int32_t>(rng.next_below(n)));
    }
    if (!rel_close(table.energy(), evaluate_energy(inst, config), 1e-9)) {
      check.require(false, "running energy drifted past 1e-9 relative on "
                           "instance " + std::to_string(k));
      return;
    }
  }
  check.require(delta_checks > 0, "no deltas checked");
}

// ---- C3: solvers reach the enumerated ground state ------------------

void c3_oracle_equivalence(Check& check) {
  const int n_instances = 10;
  const int n_trials = 10;
  const double epsilon = 1e-4;
  for (int k = 0; k < n_instances; ++k) {
    HuboInstance inst = random_instance(18, 60, 4000 + k);
    GroundState gs = brute_force_ground_state(inst);
    SuccessCriterion criterion{gs.energy, epsilon, 0.99};

    struct SolverCase {
      const char* name;
      std::function<RunResult(uint64_t)> run;
    };
    SaParams sa;
    sa.n_restarts = 100;
    sa.sweeps = 150;
    PtParams pt;
    pt.n_replicas = 16;
    pt.time_limit_seconds = 1.0;
    MtsParams mts;
    mts.population = 10;
    mts.generations = 500;
    const std::vector<SolverCase> cases{
        {"sa", [&](uint64_t s) { return run_sa(inst, sa, s, 2); }},
        {"pt", [&](uint64_t s) { return run_pt(inst, pt, s); }},
        {"mts", [&](uint64_t s) { return run_mts(inst, mts, s, 2); }},
    };
    for (const SolverCase& solver : cases) {
      std::vector<double> energies;
      double elapsed_sum = 0.0;
      for (int t = 0; t < n_trials; ++t) {
        RunResult r = solver.run(derive_stream(7700 + k, t));
        energies.push_back(r.best_energy);
        elapsed_sum += r.elapsed_seconds;
      }
      PhitEstimate est = estimate_p_hit(energies, criterion);
      check.require(est.p_hit >= 0.9,
                    std::string(solver.name) + " on instance " +
                        std::to_string(k) + ": p_hit " + fmt(est.p_hit) +
                        " below 0.9 (E_GS " + fmt(gs.energy) + ")");
      const double tts =
          compute_tts(elapsed_sum / n_trials, est.p_hit, 0.99);
      check.require(std::isfinite(tts),
                    std::string(solver.name) + " on instance " +
                        std::to_string(k) + ": infinite TTS");
    }
  }
}

// ---- C4: generator structure and calibration ------------------------

void c4_generator_structure(Check& check) {
  HeavyHexGraph graph = build_heavy_hex();
  check.require(graph.n_nodes == 156, "default lattice must have 156 nodes");
  check.require(graph.max_degree() <= 3,
                "heavy-hex degree bound exceeded: " +
                    std::to_string(graph.max_degree()));
  check.require(graph.connected(), "default lattice must be connected");

  SliceSchedule schedule = default_schedule(graph);
  const auto supports3 = densify(graph, schedule, 3);
  const auto supports4 = densify(graph, schedule, 4);
  check.require(supports3.size() == 1128,
                "3S support count " + std::to_string(supports3.size()) +
                    " != 1128");
  check.require(supports4.size() == 1323,
                "4S support count " + std::to_string(supports4.size()) +
                    " != 1323");
  std::set<Support> set4(supports4.begin(), supports4.end());
  for (const Support& s : supports3) {
    if (!set4.count(s)) {
      check.require(false, "3S supports are not a subset of 4S supports");
      break;
    }
  }

  const fs::path dir = scratch_dir("c4");
  generate_to_dir("3S", 2, 77, (dir / "a").string());
  generate_to_dir("3S", 2, 77, (dir / "b").string());
  for (const char* name : {"3S_000.json", "3S_001.json",
                           "3S_manifest.json"}) {
    std::ifstream fa(dir / "a" / name), fb(dir / "b" / name);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    check.require(sa.str() == sb.str() && !sa.str().empty(),
                  std::string("regeneration not byte-identical for ") + name);
  }
  fs::remove_all(dir);
}

// ---- C5: coupling distribution --------------------------------------

void c5_cauchy_statistics(Check& check) {
  SplitMix64 rng(20250808);
  const int n = 100000;
  std::vector<double> samples(n);
  int tail = 0;
  for (int i = 0; i < n; ++i) {
    samples[i] = rng.next_cauchy();
    if (std::abs(samples[i]) > 10.0) tail++;
  }
  std::nth_element(samples.begin(), samples.begin() + n / 2, samples.end());
  const double median = samples[n / 2];
  check.require(median >= -0.02 && median <= 0.02,
                "empirical median " + fmt(median) +
                    " outside [-0.02, 0.02]");
  const double fraction = static_cast<double>(tail) / n;
  check.require(fraction >= 0.058 && fraction <= 0.069,
                "tail fraction P(|J|>10) = " + fmt(fraction) +
                    " outside [0.058, 0.069]");
}

// ---- C6: closeness semantics ----------------------------------------

void c6_closeness(Check& check) {
  std::vector<InstanceTraces> groups;
  for (int k = 0; k < 3; ++k) {
    HuboInstance inst = random_instance(18, 60, 6100 + k);
    GroundState gs = brute_force_ground_state(inst);
    check.require(gs.energy < 0.0,
                  "oracle target must be negative for the closeness ratio");
    InstanceTraces group;
    group.instance_id = "i" + std::to_string(k);
    group.e_target = gs.energy;
    SaParams sa;
    sa.n_restarts = 60;
    sa.sweeps = 120;
    for (int t = 0; t < 2; ++t) {
      group.traces.push_back(
          run_sa(inst, sa, derive_stream(6200 + k, t), 2).trace);
    }
    groups.push_back(std::move(group));
  }
  ClosenessCurve curve = closeness_curve(groups, default_time_grid(groups));
  for (size_t i = 0; i < curve.values.size(); ++i) {
    double prev = -std::numeric_limits<double>::infinity();
    for (double v : curve.values[i]) {
      if (std::isnan(v)) continue;
      if (v > 1.0) {
        check.require(false, "oracle-target closeness exceeded 1 on " +
                                 curve.instance_ids[i] + ": " + fmt(v));
        break;
      }
      if (v < prev) {
        check.require(false, "closeness not non-decreasing on " +
                                 curve.instance_ids[i]);
        break;
      }
      prev = v;
    }
  }

  // A trace that beats a non-oracle target sits above 1.
  InstanceTraces synthetic;
  synthetic.instance_id = "synthetic";
  synthetic.e_target = -4.0;
  synthetic.traces.push_back(
      {{0.001, -2.0, false}, {0.5, -4.4, false}});
  ClosenessCurve above =
      closeness_curve({synthetic}, std::vector<double>{1.0});
  check.require(above.values[0][0] > 1.0,
                "beating the target must push closeness above 1, got " +
                    fmt(above.values[0][0]));
}

// ---- C7: pipeline contract ------------------------------------------

void c7_pipeline_contract(Check& check) {
  PipelineConfig cfg = PipelineConfig::from_json_text(R"({
    "kind": "pipeline",
    "stages": [
      {"stage": "sa", "n_restarts": 200, "sweeps": 100, "budget_seconds": 60},
      {"stage": "surrogate", "surrogate": "identity", "budget_seconds": 60},
      {"stage": "greedy", "budget_seconds": 60}
    ]
  })", 2);
  double total = 0.0;
  double overhead = 0.0;
  int monotone_violations = 0;
  for (int run = 0; run < 100; ++run) {
    HuboInstance inst = random_instance(18, 60, 7000 + run % 10);
    PipelineResult result = run_pipeline(inst, cfg, derive_stream(71, run));
    double prev = std::numeric_limits<double>::infinity();
    for (const PipelineStageRecord& stage : result.stages) {
      if (stage.best_energy > prev) monotone_violations++;
      prev = stage.best_energy;
    }
    total += result.run.elapsed_seconds;
    overhead += result.overhead_seconds;
  }
  check.require(monotone_violations == 0,
                std::to_string(monotone_violations) +
                    " stage transitions increased the best energy");
  check.require(overhead <= 0.05 * total,
                "accounting overhead " + fmt(overhead) + "s exceeds 5% of " +
                    fmt(total) + "s total");
}

// ---- C8: throughput instrumentation and scaling ----------------------

void c8_throughput_scaling(Check& check) {
  HuboInstance inst = generate_instance("3S", 5);
  const int cores = physical_core_count();

  SaParams sa;
  sa.n_restarts = 24;
  sa.sweeps = 1200;
  RunResult single = run_sa(inst, sa, 99, 1);
  const int64_t closed_form =
      int64_t{sa.n_restarts} * sa.sweeps * inst.n_vars();
  check.require(single.attempted_flips == closed_form,
                "attempted flips " +
                    std::to_string(single.attempted_flips) +
                    " != closed form " + std::to_string(closed_form));
  const double rate1 = throughput(single);
  for (int t = 2; t <= cores; ++t) {
    double best_rate = 0.0;
    for (int rep = 0; rep < 2; ++rep) {
      best_rate = std::max(best_rate, throughput(run_sa(inst, sa, 99, t)));
    }
    check.require(best_rate >= 0.6 * t * rate1,
                  "with " + std::to_string(t) + " workers: " +
                      fmt(best_rate / 1e6) + " Mflips/s < 0.6 * " +
                      std::to_string(t) + " * " + fmt(rate1 / 1e6));
  }
}

// ---- C9: report shape ------------------------------------------------

void c9_report_shape(Check& check) {
  const fs::path dir = scratch_dir("c9");
  const fs::path results = dir / "results";
  fs::create_directories(results);

  const double targets[4] = {-10.0, -20.0, -30.0, -40.0};
  std::map<std::string, TargetInfo> target_map;
  std::vector<ResultRecord> records;
  auto add_record = [&](const std::string& solver, int inst, int trial,
                        double energy, double elapsed) {
    ResultRecord r;
    r.kind = "run";
    r.instance_id = "i" + std::to_string(inst);
    r.solver_id = solver;
    r.trial = trial;
    r.run.solver_id = solver;
    r.run.best_energy = energy;
    r.run.best_config = config_from_string("+");
    r.run.trace = {{1e-4, energy, false}};
    r.run.elapsed_seconds = elapsed;
    records.push_back(std::move(r));
  };
  for (int inst = 0; inst < 4; ++inst) {
    target_map["i" + std::to_string(inst)] = {targets[inst], "explicit"};
    for (int trial = 0; trial < 2; ++trial) {
      add_record("alpha", inst, trial, targets[inst], 1.0);
      const bool hit = inst != 3 && trial == 0;
      add_record("beta", inst, trial,
                 hit ? targets[inst] : targets[inst] + 1.0, 2.0);
      add_record("gamma", inst, trial, targets[inst] - 0.5, 4.0);
    }
  }
  {
    RecordAppender appender((results / "records.ndjson").string());
    for (const ResultRecord& r : records) appender.append(r);
  }
  BenchSummary summary = summarize(records, target_map, 1e-4, 0.99);
  {
    std::ofstream f(results / "summary.json");
    f << summary_to_json(summary);
  }
  const std::string path =
      write_report(results.string(), "summary-table", results.string());

  std::map<std::string, std::vector<std::string>> rows;
  {
    std::ifstream f(path);
    std::string line;
    std::getline(f, line);  // header
    while (std::getline(f, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      std::vector<std::string> fields;
      std::istringstream ls(line);
      std::string field;
      while (std::getline(ls, field, ',')) fields.push_back(field);
      rows[fields.at(0)] = fields;
    }
  }
  check.require(rows.size() == 3, "expected one row per solver");
  // Hand-computed: alpha hits every trial in 1 s.
  check.require(rows["alpha"].at(3) == "0" &&
                    rel_close(std::stod(rows["alpha"].at(4)), 1.0, 1e-12) &&
                    rel_close(std::stod(rows["alpha"].at(5)), 1.0, 1e-12) &&
                    rel_close(std::stod(rows["alpha"].at(6)), 1.0, 1e-12),
                "alpha row must be min = max = geomean = 1 s, dagger 0");
  // beta: p_hit 1/2 at t_run 2 s on three instances, one never-hit.
  const double beta_tts = 2.0 * std::log(0.01) / std::log(0.5);
  check.require(rows["beta"].at(3) == "1",
                "beta dagger count must be 1, got " + rows["beta"].at(3));
  check.require(rel_close(std::stod(rows["beta"].at(4)), beta_tts, 1e-12) &&
                    rel_close(std::stod(rows["beta"].at(5)), beta_tts,
                              1e-12) &&
                    rel_close(std::stod(rows["beta"].at(6)), beta_tts,
                              1e-12),
                "beta finite range/geomean must equal " + fmt(beta_tts));
  // gamma: hits every trial in 4 s.
  check.require(rel_close(std::stod(rows["gamma"].at(6)), 4.0, 1e-12),
                "gamma geometric mean must be 4 s");
  fs::remove_all(dir);
}

// ---- C10: end-to-end determinism --------------------------------------

void c10_bench_determinism(Check& check) {
  const fs::path dir = scratch_dir("c10");
  std::vector<std::string> instance_paths;
  for (int k = 0; k < 2; ++k) {
    HuboInstance inst = random_instance(14, 45, 8800 + k);
    const std::string path =
        (dir / ("inst" + std::to_string(k) + ".json")).string();
    save_instance(inst, path);
    instance_paths.push_back(path);
  }
  BenchmarkSpec spec;
  spec.seed = 424242;
  spec.trials = 2;
  spec.threads = 2;
  spec.instance_paths = instance_paths;
  spec.solvers = {
      {"sa", R"({"kind": "sa", "n_restarts": 12, "sweeps": 40})"},
      {"mts", R"({"kind": "mts", "population": 4, "generations": 6})"},
      {"greedy", R"({"kind": "greedy"})"},
      {"staged", R"({"kind": "pipeline", "stages": [
          {"stage": "sa", "n_restarts": 8, "sweeps": 40, "budget_seconds": 60},
          {"stage": "surrogate", "surrogate": "perturb-restart",
           "n_copies": 8, "flip_probability": 0.05},
          {"stage": "greedy", "budget_seconds": 60}]})"},
  };
  spec.criterion.source = "oracle";

  auto run_into = [&](const std::string& out) {
    spec.out_dir = (dir / out).string();
    BenchOutcome outcome = run_bench(spec);
    std::multiset<std::string> keys;
    for (const ResultRecord& r : read_records(outcome.records_path)) {
      keys.insert(record_determinism_key(r));
    }
    return keys;
  };
  auto first = run_into("run_a");
  auto second = run_into("run_b");
  check.require(first.size() == 16,
                "expected 16 records, got " + std::to_string(first.size()));
  check.require(first == second,
                "record sets differ between identical bench executions");
  fs::remove_all(dir);
}

struct Criterion {
  int id;
  const char* name;
  void (*fn)(Check&);
};

const Criterion kCriteria[] = {
    {1, "time-to-solution formula exactness", c1_tts_exactness},
    {2, "incremental delta-energy correctness", c2_delta_energy},
    {3, "solver oracle equivalence at N=18", c3_oracle_equivalence},
    {4, "generator structure and calibrated term counts",
     c4_generator_structure},
    {5, "coupling distribution statistics", c5_cauchy_statistics},
    {6, "closeness-ratio semantics", c6_closeness},
    {7, "pipeline stage monotonicity and accounting", c7_pipeline_contract},
    {8, "throughput closed form and parallel scaling", c8_throughput_scaling},
    {9, "report shape with dagger and geometric means", c9_report_shape},
    {10, "end-to-end benchmark determinism", c10_bench_determinism},
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    selected.insert(std::atoi(argv[i]));
  }
  int failures = 0;
  for (const Criterion& criterion : kCriteria) {
    if (!selected.empty() && !selected.count(criterion.id)) continue;
    Check check;
    try {
      criterion.fn(check);
    } catch (const std::exception& e) {
      check.require(false, std::string("exception: ") + e.what());
    }
    if (check.failures.empty()) {
      std::printf("[PASS] C%-2d %s\n", criterion.id, criterion.name);
    } else {
      failures++;
      std::printf("[FAIL] C%-2d %s: %s\n", criterion.id, criterion.name,
                  check.failures.front().c_str());
      for (size_t i = 1; i < check.failures.size(); ++i) {
        std::printf("           - %s\n", check.failures[i].c_str());
      }
    }
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
