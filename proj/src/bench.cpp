#include "bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "generator.hpp"
#include "instance_io.hpp"
#include "oracle.hpp"
#include "pipeline.hpp"
#include "report.hpp"
#include "rng.hpp"

namespace hubo {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int64_t unix_millis() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::string stem_of(const std::string& path) {
  return fs::path(path).stem().string();
}

bool is_pipeline_config(const std::string& config_json) {
  auto doc = json::parse(config_json);
  return doc.is_object() && doc.value("kind", std::string()) == "pipeline";
}

// Canonical echo of a cell config; also validates it early.
std::string canonical_config(const std::string& config_json, int n_threads) {
  if (is_pipeline_config(config_json)) {
    return PipelineConfig::from_json_text(config_json, n_threads).config_json;
  }
  return SolverConfig::from_json_text(config_json).to_json_text();
}

ResultRecord execute_cell(const HuboInstance& instance,
                          const std::string& instance_id,
                          const SolverEntry& solver, uint64_t seed,
                          int trial, int n_threads) {
  ResultRecord record;
  record.instance_id = instance_id;
  record.solver_id = solver.id;
  record.trial = trial;
  record.seed = seed;
  record.t_start_unix_ms = unix_millis();
  if (is_pipeline_config(solver.config_json)) {
    PipelineConfig cfg =
        PipelineConfig::from_json_text(solver.config_json, n_threads);
    PipelineResult result = run_pipeline(instance, cfg, seed);
    record.kind = "pipeline";
    record.config_json = cfg.config_json;
    record.run = std::move(result.run);
    record.stages = std::move(result.stages);
    record.overhead_seconds = result.overhead_seconds;
  } else {
    SolverConfig cfg = SolverConfig::from_json_text(solver.config_json);
    record.kind = "run";
    record.config_json = cfg.to_json_text();
    record.run = run_solver(instance, cfg, seed, n_threads);
  }
  record.t_end_unix_ms = unix_millis();
  return record;
}

}  // namespace

uint64_t cell_seed(uint64_t spec_seed, size_t instance_index,
                   size_t solver_index, int trial, size_t n_solvers,
                   int trials) {
  const uint64_t position =
      (static_cast<uint64_t>(instance_index) * n_solvers + solver_index) *
          static_cast<uint64_t>(trials) +
      static_cast<uint64_t>(trial);
  return derive_stream(spec_seed, position);
}

BenchmarkSpec BenchmarkSpec::from_json_text(const std::string& text,
                                            const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(origin + ": spec parse error: " + e.what());
  }
  BenchmarkSpec spec;
  try {
    spec.seed = doc.value("seed", uint64_t{0});
    spec.trials = doc.value("trials", 1);
    spec.threads = doc.value("threads", 1);
    spec.out_dir = doc.value("out_dir", std::string());
    if (doc.contains("instances")) {
      for (const json& p : doc.at("instances")) {
        spec.instance_paths.push_back(p.get<std::string>());
      }
    }
    if (doc.contains("generate")) {
      const json& g = doc["generate"];
      GenerationRecipe recipe;
      recipe.family = g.value("family", std::string("3S"));
      recipe.count = g.value("count", 1);
      recipe.seed = g.value("seed", uint64_t{0});
      spec.generate = recipe;
    }
    if (!doc.contains("solvers") || !doc["solvers"].is_array() ||
        doc["solvers"].empty()) {
      throw std::runtime_error(origin +
                               ": spec needs a non-empty \"solvers\" array");
    }
    std::set<std::string> ids;
    for (const json& s : doc["solvers"]) {
      SolverEntry entry;
      entry.id = s.at("id").get<std::string>();
      entry.config_json = s.at("config").dump();
      if (!ids.insert(entry.id).second) {
        throw std::runtime_error(origin + ": duplicate solver id \"" +
                                 entry.id + "\"");
      }
      spec.solvers.push_back(std::move(entry));
    }
    if (doc.contains("criterion")) {
      const json& c = doc["criterion"];
      spec.criterion.source = c.value("source", std::string("oracle"));
      spec.criterion.designated_solver =
          c.value("designated_solver", std::string());
      spec.criterion.epsilon = c.value("epsilon", 1e-4);
      spec.criterion.p_target = c.value("p_target", 0.99);
      spec.criterion.oracle_max_vars = c.value("oracle_max_vars", 24);
      if (c.contains("targets")) {
        for (auto& [key, value] : c["targets"].items()) {
          spec.criterion.explicit_targets[key] = value.get<double>();
        }
      }
      if (c.contains("value")) {
        spec.criterion.explicit_value = c["value"].get<double>();
      }
    }
  } catch (const json::exception& e) {
    throw std::runtime_error(origin + ": spec field error: " + e.what());
  }
  if (spec.trials < 1) {
    throw std::runtime_error(origin + ": trials must be at least 1");
  }
  if (spec.instance_paths.empty() && !spec.generate) {
    throw std::runtime_error(
        origin + ": spec needs \"instances\" paths or a \"generate\" recipe");
  }
  const std::string& src = spec.criterion.source;
  if (src != "oracle" && src != "best-of" && src != "explicit") {
    throw std::runtime_error(origin + ": unknown criterion source \"" + src +
                             "\"");
  }
  if (src == "best-of" && spec.criterion.designated_solver.empty()) {
    throw std::runtime_error(
        origin + ": best-of criterion needs \"designated_solver\"");
  }
  return spec;
}

BenchmarkSpec BenchmarkSpec::from_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) {
    throw std::runtime_error("cannot open spec file " + path);
  }
  std::ostringstream buf;
  buf << f.rdbuf();
  return from_json_text(buf.str(), path);
}

std::string BenchmarkSpec::to_json_text() const {
  json doc;
  doc["schema_version"] = 1;
  doc["seed"] = seed;
  doc["trials"] = trials;
  doc["threads"] = threads;
  doc["out_dir"] = out_dir;
  doc["instances"] = instance_paths;
  if (generate) {
    doc["generate"] = {{"family", generate->family},
                       {"count", generate->count},
                       {"seed", generate->seed}};
  }
  json solvers = json::array();
  for (const SolverEntry& s : this->solvers) {
    solvers.push_back({{"id", s.id}, {"config", json::parse(s.config_json)}});
  }
  doc["solvers"] = std::move(solvers);
  json criterion{{"source", this->criterion.source},
                 {"epsilon", this->criterion.epsilon},
                 {"p_target", this->criterion.p_target},
                 {"oracle_max_vars", this->criterion.oracle_max_vars}};
  if (!this->criterion.designated_solver.empty()) {
    criterion["designated_solver"] = this->criterion.designated_solver;
  }
  if (!this->criterion.explicit_targets.empty()) {
    criterion["targets"] = this->criterion.explicit_targets;
  }
  if (this->criterion.explicit_value) {
    criterion["value"] = *this->criterion.explicit_value;
  }
  doc["criterion"] = std::move(criterion);
  return doc.dump(2);
}

std::map<std::string, TargetInfo> resolve_targets(
    const CriterionSpec& criterion,
    const std::map<std::string, HuboInstance>& instances,
    const std::vector<ResultRecord>& records) {
  std::map<std::string, TargetInfo> targets;
  if (criterion.source == "oracle") {
    for (const auto& [id, instance] : instances) {
      GroundState gs =
          brute_force_ground_state(instance, criterion.oracle_max_vars);
      targets[id] = {gs.energy, "oracle"};
    }
  } else if (criterion.source == "best-of") {
    for (const ResultRecord& r : records) {
      if (r.solver_id != criterion.designated_solver) continue;
      auto it = targets.find(r.instance_id);
      if (it == targets.end() || r.run.best_energy < it->second.e_target) {
        targets[r.instance_id] = {r.run.best_energy,
                                  "best-of:" + criterion.designated_solver};
      }
    }
    for (const auto& [id, instance] : instances) {
      if (!targets.count(id)) {
        throw std::runtime_error(
            "best-of criterion: no records from designated solver \"" +
            criterion.designated_solver + "\" for instance " + id);
      }
    }
  } else if (criterion.source == "explicit") {
    for (const auto& [id, instance] : instances) {
      auto it = criterion.explicit_targets.find(id);
      if (it != criterion.explicit_targets.end()) {
        targets[id] = {it->second, "explicit"};
      } else if (criterion.explicit_value) {
        targets[id] = {*criterion.explicit_value, "explicit"};
      } else {
        throw std::runtime_error("explicit criterion: no target for " + id);
      }
    }
  } else {
    throw std::runtime_error("unknown criterion source " + criterion.source);
  }
  return targets;
}

BenchSummary summarize(const std::vector<ResultRecord>& records,
                       const std::map<std::string, TargetInfo>& targets,
                       double epsilon, double p_target) {
  BenchSummary summary;
  summary.epsilon = epsilon;
  summary.p_target = p_target;
  summary.targets = targets;

  // (solver, instance) -> energies and elapsed times over trials.
  std::map<std::pair<std::string, std::string>,
           std::pair<std::vector<double>, std::vector<double>>>
      cells;
  for (const ResultRecord& r : records) {
    auto& cell = cells[{r.solver_id, r.instance_id}];
    cell.first.push_back(r.run.best_energy);
    cell.second.push_back(r.run.elapsed_seconds);
  }
  std::map<std::string, std::vector<double>> tts_by_solver;
  for (const auto& [key, data] : cells) {
    const auto& [solver_id, instance_id] = key;
    auto target = targets.find(instance_id);
    if (target == targets.end()) continue;
    SuccessCriterion criterion{target->second.e_target, epsilon, p_target};
    PhitEstimate est = estimate_p_hit(data.first, criterion);
    double t_sum = 0.0;
    for (double t : data.second) t_sum += t;
    const double t_run = t_sum / data.second.size();
    CellSummary cell;
    cell.solver_id = solver_id;
    cell.instance_id = instance_id;
    cell.n_runs = est.n_runs;
    cell.n_hits = est.n_hits;
    cell.p_hit = est.p_hit;
    cell.t_run_mean_seconds = t_run;
    cell.tts_seconds =
        t_run > 0.0 ? compute_tts(t_run, est.p_hit, p_target)
                    : std::numeric_limits<double>::infinity();
    summary.cells.push_back(cell);
    tts_by_solver[solver_id].push_back(cell.tts_seconds);
  }
  for (const auto& [solver_id, values] : tts_by_solver) {
    SolverSummary s;
    s.solver_id = solver_id;
    s.n_instances = static_cast<int64_t>(values.size());
    double finite_min = std::numeric_limits<double>::infinity();
    double finite_max = -std::numeric_limits<double>::infinity();
    for (double v : values) {
      if (std::isinf(v)) {
        s.n_infinite++;
      } else {
        s.n_finite++;
        finite_min = std::min(finite_min, v);
        finite_max = std::max(finite_max, v);
      }
    }
    if (s.n_finite > 0) {
      s.tts_min = finite_min;
      s.tts_max = finite_max;
      s.tts_geometric_mean = geometric_mean_tts(values).value;
    }
    summary.solvers.push_back(std::move(s));
  }
  return summary;
}

namespace {

json tts_to_json(double tts) {
  if (std::isinf(tts)) return json("inf");
  return json(tts);
}

double tts_from_json(const json& j) {
  if (j.is_string()) return std::numeric_limits<double>::infinity();
  return j.get<double>();
}

}  // namespace

std::string summary_to_json(const BenchSummary& summary) {
  json doc;
  doc["schema_version"] = 1;
  doc["epsilon"] = summary.epsilon;
  doc["p_target"] = summary.p_target;
  json targets = json::object();
  for (const auto& [id, t] : summary.targets) {
    targets[id] = {{"e_target", t.e_target}, {"provenance", t.provenance}};
  }
  doc["targets"] = std::move(targets);
  json cells = json::array();
  for (const CellSummary& c : summary.cells) {
    cells.push_back({{"solver_id", c.solver_id},
                     {"instance_id", c.instance_id},
                     {"n_runs", c.n_runs},
                     {"n_hits", c.n_hits},
                     {"p_hit", c.p_hit},
                     {"t_run_mean_seconds", c.t_run_mean_seconds},
                     {"tts_seconds", tts_to_json(c.tts_seconds)}});
  }
  doc["cells"] = std::move(cells);
  json solvers = json::array();
  for (const SolverSummary& s : summary.solvers) {
    json row{{"solver_id", s.solver_id},
             {"n_instances", s.n_instances},
             {"n_finite", s.n_finite},
             {"n_infinite", s.n_infinite}};
    if (s.n_finite > 0) {
      row["tts_min"] = s.tts_min;
      row["tts_max"] = s.tts_max;
    }
    if (s.tts_geometric_mean) {
      row["tts_geometric_mean"] = *s.tts_geometric_mean;
    }
    solvers.push_back(std::move(row));
  }
  doc["solvers"] = std::move(solvers);
  return doc.dump(2);
}

BenchSummary summary_from_json(const std::string& text) {
  json doc = json::parse(text);
  BenchSummary summary;
  summary.epsilon = doc.at("epsilon").get<double>();
  summary.p_target = doc.at("p_target").get<double>();
  for (auto& [id, t] : doc.at("targets").items()) {
    summary.targets[id] = {t.at("e_target").get<double>(),
                           t.at("provenance").get<std::string>()};
  }
  for (const json& c : doc.at("cells")) {
    CellSummary cell;
    cell.solver_id = c.at("solver_id").get<std::string>();
    cell.instance_id = c.at("instance_id").get<std::string>();
    cell.n_runs = c.at("n_runs").get<int64_t>();
    cell.n_hits = c.at("n_hits").get<int64_t>();
    cell.p_hit = c.at("p_hit").get<double>();
    cell.t_run_mean_seconds = c.at("t_run_mean_seconds").get<double>();
    cell.tts_seconds = tts_from_json(c.at("tts_seconds"));
    summary.cells.push_back(std::move(cell));
  }
  for (const json& s : doc.at("solvers")) {
    SolverSummary solver;
    solver.solver_id = s.at("solver_id").get<std::string>();
    solver.n_instances = s.at("n_instances").get<int64_t>();
    solver.n_finite = s.at("n_finite").get<int64_t>();
    solver.n_infinite = s.at("n_infinite").get<int64_t>();
    if (s.contains("tts_min")) solver.tts_min = s["tts_min"].get<double>();
    if (s.contains("tts_max")) solver.tts_max = s["tts_max"].get<double>();
    if (s.contains("tts_geometric_mean")) {
      solver.tts_geometric_mean = s["tts_geometric_mean"].get<double>();
    }
    summary.solvers.push_back(std::move(solver));
  }
  return summary;
}

BenchOutcome run_bench(const BenchmarkSpec& spec) {
  if (spec.out_dir.empty()) {
    throw std::runtime_error("bench needs an output directory");
  }
  fs::create_directories(spec.out_dir);
  const fs::path out_dir(spec.out_dir);

  // Resolve the instance set. Generated instances land next to the
  // results so records stay replayable.
  std::map<std::string, HuboInstance> instances;
  std::vector<std::string> instance_order;
  if (spec.generate) {
    const fs::path gen_dir = out_dir / "instances";
    fs::create_directories(gen_dir);
    auto family = generate_family(spec.generate->family, spec.generate->count,
                                  spec.generate->seed);
    for (size_t k = 0; k < family.size(); ++k) {
      char name[64];
      std::snprintf(name, sizeof(name), "%s_%03zu.json",
                    spec.generate->family.c_str(), k);
      const fs::path file = gen_dir / name;
      save_instance(family[k], file.string());
      const std::string id = stem_of(file.string());
      instance_order.push_back(id);
      instances.emplace(id, std::move(family[k]));
    }
  }
  for (const std::string& path : spec.instance_paths) {
    const std::string id = stem_of(path);
    if (instances.count(id)) {
      throw std::runtime_error("duplicate instance id \"" + id + "\"");
    }
    instance_order.push_back(id);
    instances.emplace(id, load_instance(path));
  }

  // Echo the effective spec for replayability.
  {
    std::ofstream f(out_dir / "effective_spec.json");
    f << spec.to_json_text() << "\n";
  }

  // Validate configs before any work.
  for (const SolverEntry& s : spec.solvers) {
    canonical_config(s.config_json, 1);
  }

  const std::string records_path = (out_dir / "records.ndjson").string();
  std::set<std::tuple<std::string, std::string, int>> completed;
  std::vector<ResultRecord> existing;
  if (fs::exists(records_path)) {
    existing = read_records(records_path);
    for (const ResultRecord& r : existing) {
      completed.insert({r.instance_id, r.solver_id, r.trial});
    }
  }

  struct Cell {
    size_t instance_index;
    size_t solver_index;
    int trial;
  };
  std::vector<Cell> todo;
  int skipped = 0;
  for (size_t i = 0; i < instance_order.size(); ++i) {
    for (size_t s = 0; s < spec.solvers.size(); ++s) {
      for (int t = 0; t < spec.trials; ++t) {
        if (completed.count(
                {instance_order[i], spec.solvers[s].id, t})) {
          skipped++;
        } else {
          todo.push_back({i, s, t});
        }
      }
    }
  }

  BenchOutcome outcome;
  outcome.records_path = records_path;
  outcome.skipped_cells = skipped;
  outcome.already_complete = todo.empty() && skipped > 0;

  const auto bench_t0 = std::chrono::steady_clock::now();
  double solver_seconds = 0.0;
  int workers_used = 0;
  if (!todo.empty()) {
    RecordAppender appender(records_path);
    std::atomic<size_t> next{0};
    const int workers = std::clamp(spec.threads, 1,
                                   static_cast<int>(todo.size()));
    workers_used = workers;
    // Cells are the unit of parallelism; each cell runs its solver
    // single-threaded when several workers share the grid.
    const int cell_threads = workers > 1 ? 1 : spec.threads;
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> failures(workers);
    std::vector<double> worker_solver_seconds(workers, 0.0);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (;;) {
            const size_t idx = next.fetch_add(1);
            if (idx >= todo.size()) break;
            const Cell& cell = todo[idx];
            const std::string& instance_id =
                instance_order[cell.instance_index];
            const uint64_t seed = cell_seed(
                spec.seed, cell.instance_index, cell.solver_index,
                cell.trial, spec.solvers.size(), spec.trials);
            ResultRecord record = execute_cell(
                instances.at(instance_id), instance_id,
                spec.solvers[cell.solver_index], seed, cell.trial,
                cell_threads);
            worker_solver_seconds[w] += record.run.elapsed_seconds;
            appender.append(record);
          }
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& failure : failures) {
      if (failure) std::rethrow_exception(failure);
    }
    for (double s : worker_solver_seconds) solver_seconds += s;
    outcome.executed_cells = static_cast<int>(todo.size());
  }
  const double bench_wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                    bench_t0)
          .count();

  // Summaries are derived files, rebuilt from the complete log.
  std::vector<ResultRecord> all_records = read_records(records_path);
  auto targets = resolve_targets(spec.criterion, instances, all_records);
  BenchSummary summary = summarize(all_records, targets,
                                   spec.criterion.epsilon,
                                   spec.criterion.p_target);
  const std::string summary_path = (out_dir / "summary.json").string();
  {
    std::ofstream f(summary_path);
    f << summary_to_json(summary) << "\n";
  }
  outcome.summary_path = summary_path;

  // Closeness data derived from the records; skipped (with the reason
  // kept) when the targets do not admit the ratio.
  std::string closeness_note;
  try {
    closeness_note =
        write_report(spec.out_dir, "closeness-csv", spec.out_dir);
  } catch (const std::exception& e) {
    closeness_note = std::string("skipped: ") + e.what();
  }

  // Solver time is bracketed per record and reported apart from
  // everything else this invocation spent: worker time outside solver
  // calls covers scheduling, record appends, and end-of-grid idle.
  {
    const double worker_seconds =
        static_cast<double>(std::max(workers_used, 1)) * bench_wall;
    json accounting{
        {"bench_wall_seconds", bench_wall},
        {"workers", workers_used},
        {"solver_seconds_executed_cells", solver_seconds},
        {"worker_seconds_outside_solver",
         std::max(0.0, worker_seconds - solver_seconds)},
        {"closeness_csv", closeness_note},
    };
    std::ofstream f(out_dir / "accounting.json");
    f << accounting.dump(2) << "\n";
  }
  return outcome;
}

std::string generate_to_dir(const std::string& family, int count,
                            uint64_t seed, const std::string& out_dir) {
  if (out_dir.empty()) {
    throw std::runtime_error("gen needs an output directory");
  }
  auto instances = generate_family(family, count, seed);
  fs::create_directories(out_dir);
  std::vector<ManifestEntry> entries;
  for (size_t k = 0; k < instances.size(); ++k) {
    char name[64];
    std::snprintf(name, sizeof(name), "%s_%03zu.json", family.c_str(), k);
    const fs::path file = fs::path(out_dir) / name;
    save_instance(instances[k], file.string());
    ManifestEntry entry;
    entry.file = name;
    entry.n_vars = instances[k].n_vars();
    entry.seed = instances[k].metadata().seed;
    entry.n_terms = static_cast<int64_t>(instances[k].terms().size());
    entry.term_counts = instances[k].term_counts_by_arity();
    entries.push_back(std::move(entry));
  }
  const fs::path manifest_path =
      fs::path(out_dir) / (family + "_manifest.json");
  std::ofstream f(manifest_path, std::ios::binary | std::ios::trunc);
  if (!f) {
    throw std::runtime_error("cannot write manifest " +
                             manifest_path.string());
  }
  f << manifest_to_string(family, count, seed, entries);
  return manifest_path.string();
}

ResultRecord solve_once(const std::string& instance_path,
                        const std::string& config_json, uint64_t seed,
                        int n_threads, const std::string& out_dir) {
  HuboInstance instance = load_instance(instance_path);
  SolverEntry entry;
  entry.id = "adhoc";
  entry.config_json = config_json;
  // Label ad-hoc runs by their solver kind.
  entry.id = json::parse(config_json).value("kind", std::string("run"));
  ResultRecord record = execute_cell(instance, stem_of(instance_path), entry,
                                     seed, 0, n_threads);
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    RecordAppender appender((fs::path(out_dir) / "records.ndjson").string());
    appender.append(record);
  }
  return record;
}

ImportOutcome import_traces(const std::string& trace_path,
                            const std::string& instance_path,
                            const std::string& solver_label,
                            const std::string& out_dir) {
  std::ifstream in(trace_path);
  if (!in) {
    throw std::runtime_error("cannot open trace file " + trace_path);
  }
  std::optional<HuboInstance> instance;
  if (!instance_path.empty()) {
    instance = load_instance(instance_path);
  }
  if (out_dir.empty()) {
    throw std::runtime_error("import needs an output directory");
  }
  fs::create_directories(out_dir);
  ImportOutcome outcome;
  outcome.records_path =
      (fs::path(out_dir) / "records.ndjson").string();
  RecordAppender appender(outcome.records_path);

  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    line_no++;
    if (line.empty()) continue;
    const std::string origin = trace_path + ":" + std::to_string(line_no);
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::parse_error& e) {
      throw std::runtime_error(origin + ": trace parse error: " + e.what());
    }
    ResultRecord record;
    record.kind = "imported";
    try {
      record.solver_id =
          solver_label.empty() ? doc.at("solver").get<std::string>()
                               : solver_label;
      record.instance_id = doc.at("instance_id").get<std::string>();
      record.trial = doc.at("trial").get<int>();
      record.run.elapsed_seconds = doc.at("elapsed_seconds").get<double>();
      record.run.best_energy = doc.at("energy").get<double>();
    } catch (const json::exception& e) {
      throw std::runtime_error(origin + ": trace field error: " + e.what());
    }
    record.run.solver_id = record.solver_id;
    record.run.trace.push_back(
        {std::max(record.run.elapsed_seconds, 1e-9),
         record.run.best_energy, false});
    if (doc.contains("spins")) {
      const std::string spins = doc["spins"].get<std::string>();
      SpinConfig config;
      try {
        config = config_from_string(spins);
      } catch (const std::invalid_argument& e) {
        throw std::runtime_error(origin + ": " + e.what());
      }
      if (!instance) {
        throw std::runtime_error(
            origin +
            ": trace carries spins; an instance file is required to "
            "re-validate them");
      }
      if (static_cast<int32_t>(config.size()) != instance->n_vars()) {
        throw std::runtime_error(
            origin + ": spin string length " +
            std::to_string(config.size()) + " does not match instance (" +
            std::to_string(instance->n_vars()) + " variables)");
      }
      const double evaluated = evaluate_energy(*instance, config);
      record.run.best_config = std::move(config);
      record.provenance = "imported";
      const double diff = std::abs(evaluated - record.run.best_energy);
      const double scale =
          std::max({1.0, std::abs(evaluated),
                    std::abs(record.run.best_energy)});
      if (diff > 1e-9 * scale) {
        record.flagged = true;
        std::ostringstream reason;
        reason << "claimed energy " << record.run.best_energy
               << " disagrees with re-evaluated " << evaluated;
        record.flag_reason = reason.str();
        outcome.flagged++;
      }
      // Keep the verifiable truth, not the claim.
      record.run.best_energy = evaluated;
      record.run.trace.back().energy = evaluated;
    } else {
      record.provenance = "imported-unverified";
      outcome.unverifiable++;
    }
    record.t_start_unix_ms = unix_millis();
    record.t_end_unix_ms = record.t_start_unix_ms;
    appender.append(record);
    outcome.accepted++;
  }
  return outcome;
}

}  // namespace hubo
