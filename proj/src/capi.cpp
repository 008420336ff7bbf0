#include <hubobench.h>

#include <cstring>
#include <new>
#include <string>

#include <json.hpp>

#include "bench.hpp"
#include "generator.hpp"
#include "instance_io.hpp"
#include "metrics.hpp"
#include "oracle.hpp"
#include "pipeline.hpp"
#include "records.hpp"
#include "report.hpp"
#include "solvers.hpp"
#include "version.hpp"

/* Opaque handle definitions. */
struct hubo_instance {
  hubo::HuboInstance value;
};

struct hubo_result {
  hubo::ResultRecord record;
};

namespace {

thread_local std::string tl_error;

void set_error(const std::string& message) { tl_error = message; }

int32_t classify(const std::exception& e) {
  if (dynamic_cast<const hubo::ContractViolation*>(&e)) {
    return HUBO_ERR_CONTRACT;
  }
  const std::string what = e.what();
  if (what.find("parse") != std::string::npos ||
      what.find("field") != std::string::npos ||
      what.find("schema") != std::string::npos) {
    return HUBO_ERR_PARSE;
  }
  if (dynamic_cast<const std::invalid_argument*>(&e)) {
    return HUBO_ERR_INVALID_ARGUMENT;
  }
  if (dynamic_cast<const std::runtime_error*>(&e)) {
    return HUBO_ERR_IO;
  }
  return HUBO_ERR_INTERNAL;
}

template <typename Fn>
int32_t guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    set_error(e.what());
    return classify(e);
  } catch (...) {
    set_error("unknown failure");
    return HUBO_ERR_INTERNAL;
  }
}

int32_t require_arg(bool ok, const char* what) {
  if (!ok) {
    set_error(std::string("null or invalid argument: ") + what);
    return HUBO_ERR_INVALID_ARGUMENT;
  }
  return HUBO_OK;
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

hubo::SpinConfig spins_from(const int8_t* spins, size_t n) {
  hubo::SpinConfig config(spins, spins + n);
  return config;
}

}  // namespace

extern "C" {

const char* hubo_version(void) { return hubo::kVersion; }

const char* hubo_last_error(void) { return tl_error.c_str(); }

const char* hubo_status_name(int32_t status) {
  switch (status) {
    case HUBO_OK: return "ok";
    case HUBO_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case HUBO_ERR_PARSE: return "parse-error";
    case HUBO_ERR_IO: return "io-error";
    case HUBO_ERR_CONTRACT: return "contract-violation";
    case HUBO_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

int32_t hubo_instance_load(const char* path, hubo_instance** out) {
  if (int32_t rc = require_arg(path && out, "path/out")) return rc;
  return guarded([&] {
    *out = new hubo_instance{hubo::load_instance(path)};
    return HUBO_OK;
  });
}

int32_t hubo_instance_save(const hubo_instance* instance, const char* path) {
  if (int32_t rc = require_arg(instance && path, "instance/path")) return rc;
  return guarded([&] {
    hubo::save_instance(instance->value, path);
    return HUBO_OK;
  });
}

int32_t hubo_instance_generate(const char* family, uint64_t seed,
                               hubo_instance** out) {
  if (int32_t rc = require_arg(family && out, "family/out")) return rc;
  return guarded([&] {
    *out = new hubo_instance{hubo::generate_instance(family, seed)};
    return HUBO_OK;
  });
}

int32_t hubo_instance_random(int32_t n_vars, int32_t n_terms, uint64_t seed,
                             hubo_instance** out) {
  if (int32_t rc = require_arg(out != nullptr, "out")) return rc;
  return guarded([&] {
    *out = new hubo_instance{hubo::random_instance(n_vars, n_terms, seed)};
    return HUBO_OK;
  });
}

void hubo_instance_free(hubo_instance* instance) { delete instance; }

int32_t hubo_instance_n_vars(const hubo_instance* instance) {
  return instance ? instance->value.n_vars() : -1;
}

int64_t hubo_instance_n_terms(const hubo_instance* instance) {
  return instance ? static_cast<int64_t>(instance->value.terms().size()) : -1;
}

int32_t hubo_instance_energy(const hubo_instance* instance,
                             const int8_t* spins, size_t n_spins,
                             double* out_energy) {
  if (int32_t rc = require_arg(instance && spins && out_energy,
                               "instance/spins/out_energy")) {
    return rc;
  }
  return guarded([&] {
    *out_energy =
        hubo::evaluate_energy(instance->value, spins_from(spins, n_spins));
    return HUBO_OK;
  });
}

int32_t hubo_instance_validate(const hubo_instance* instance,
                               int64_t* out_violations) {
  if (int32_t rc = require_arg(instance && out_violations,
                               "instance/out_violations")) {
    return rc;
  }
  return guarded([&] {
    *out_violations = static_cast<int64_t>(
        hubo::validate_instance(instance->value).violations.size());
    return HUBO_OK;
  });
}

int32_t hubo_run(const hubo_instance* instance, const char* config_json,
                 uint64_t seed, int32_t n_threads, hubo_result** out) {
  if (int32_t rc = require_arg(instance && config_json && out,
                               "instance/config_json/out")) {
    return rc;
  }
  return guarded([&] {
    auto doc = nlohmann::json::parse(config_json, nullptr,
                                     /*allow_exceptions=*/false);
    hubo::ResultRecord record;
    record.instance_id = "adhoc";
    record.seed = seed;
    if (doc.is_object() &&
        doc.value("kind", std::string()) == "pipeline") {
      hubo::PipelineConfig cfg =
          hubo::PipelineConfig::from_json_text(config_json, n_threads);
      hubo::PipelineResult result =
          hubo::run_pipeline(instance->value, cfg, seed);
      record.kind = "pipeline";
      record.solver_id = "pipeline";
      record.config_json = cfg.config_json;
      record.run = std::move(result.run);
      record.stages = std::move(result.stages);
      record.overhead_seconds = result.overhead_seconds;
    } else {
      hubo::SolverConfig cfg =
          hubo::SolverConfig::from_json_text(config_json);
      record.kind = "run";
      record.solver_id = cfg.kind;
      record.config_json = cfg.to_json_text();
      record.run = hubo::run_solver(instance->value, cfg, seed, n_threads);
    }
    *out = new hubo_result{std::move(record)};
    return HUBO_OK;
  });
}

void hubo_result_free(hubo_result* result) { delete result; }

int32_t hubo_result_best_energy(const hubo_result* result,
                                double* out_energy) {
  if (int32_t rc = require_arg(result && out_energy, "result/out_energy")) {
    return rc;
  }
  *out_energy = result->record.run.best_energy;
  return HUBO_OK;
}

int32_t hubo_result_best_config(const hubo_result* result, int8_t* spins,
                                size_t n_spins) {
  if (int32_t rc = require_arg(result && spins, "result/spins")) return rc;
  const hubo::SpinConfig& config = result->record.run.best_config;
  if (n_spins != config.size()) {
    set_error("buffer size " + std::to_string(n_spins) +
              " does not match configuration size " +
              std::to_string(config.size()));
    return HUBO_ERR_INVALID_ARGUMENT;
  }
  std::memcpy(spins, config.data(), n_spins);
  return HUBO_OK;
}

int64_t hubo_result_attempted_flips(const hubo_result* result) {
  return result ? result->record.run.attempted_flips : -1;
}

int64_t hubo_result_accepted_flips(const hubo_result* result) {
  return result ? result->record.run.accepted_flips : -1;
}

double hubo_result_elapsed_seconds(const hubo_result* result) {
  return result ? result->record.run.elapsed_seconds : -1.0;
}

int64_t hubo_result_trace_len(const hubo_result* result) {
  return result ? static_cast<int64_t>(result->record.run.trace.size()) : -1;
}

int32_t hubo_result_trace_entry(const hubo_result* result, int64_t index,
                                double* out_t_seconds, double* out_energy,
                                int32_t* out_heartbeat) {
  if (int32_t rc = require_arg(result && out_t_seconds && out_energy,
                               "result/out pointers")) {
    return rc;
  }
  const auto& trace = result->record.run.trace;
  if (index < 0 || index >= static_cast<int64_t>(trace.size())) {
    set_error("trace index out of range");
    return HUBO_ERR_INVALID_ARGUMENT;
  }
  *out_t_seconds = trace[index].t_seconds;
  *out_energy = trace[index].energy;
  if (out_heartbeat) *out_heartbeat = trace[index].heartbeat ? 1 : 0;
  return HUBO_OK;
}

int32_t hubo_result_to_json(const hubo_result* result, char** out_json) {
  if (int32_t rc = require_arg(result && out_json, "result/out_json")) {
    return rc;
  }
  return guarded([&] {
    *out_json = copy_string(hubo::record_to_json_line(result->record));
    return HUBO_OK;
  });
}

void hubo_string_free(char* text) { delete[] text; }

int32_t hubo_ground_state(const hubo_instance* instance, int32_t max_vars,
                          double* out_energy, int8_t* out_config,
                          size_t n_spins, int64_t* out_degeneracy) {
  if (int32_t rc = require_arg(instance && out_energy,
                               "instance/out_energy")) {
    return rc;
  }
  return guarded([&] {
    hubo::GroundState gs = hubo::brute_force_ground_state(
        instance->value, max_vars > 0 ? max_vars : 24);
    *out_energy = gs.energy;
    if (out_degeneracy) *out_degeneracy = gs.degeneracy;
    if (out_config) {
      if (n_spins != gs.config.size()) {
        set_error("config buffer size does not match instance");
        return HUBO_ERR_INVALID_ARGUMENT;
      }
      std::memcpy(out_config, gs.config.data(), n_spins);
    }
    return HUBO_OK;
  });
}

int32_t hubo_tts(double t_run_seconds, double p_hit, double p_target,
                 double* out_tts) {
  if (int32_t rc = require_arg(out_tts != nullptr, "out_tts")) return rc;
  return guarded([&] {
    *out_tts = hubo::compute_tts(t_run_seconds, p_hit, p_target);
    return HUBO_OK;
  });
}

int32_t hubo_relative_gap(double e_candidate, double e_gs, double* out_gap) {
  if (int32_t rc = require_arg(out_gap != nullptr, "out_gap")) return rc;
  return guarded([&] {
    *out_gap = hubo::relative_gap(e_candidate, e_gs);
    return HUBO_OK;
  });
}

int32_t hubo_cmd_gen(const char* family, int32_t count, uint64_t seed,
                     const char* out_dir) {
  if (int32_t rc = require_arg(family && out_dir, "family/out_dir")) {
    return rc;
  }
  return guarded([&] {
    hubo::generate_to_dir(family, count, seed, out_dir);
    return HUBO_OK;
  });
}

int32_t hubo_cmd_solve(const char* instance_path, const char* config_json,
                       uint64_t seed, int32_t n_threads, const char* out_dir,
                       char** out_summary_json) {
  if (int32_t rc = require_arg(instance_path && config_json,
                               "instance_path/config_json")) {
    return rc;
  }
  return guarded([&] {
    hubo::ResultRecord record = hubo::solve_once(
        instance_path, config_json, seed, n_threads,
        out_dir ? out_dir : "");
    if (out_summary_json) {
      nlohmann::json summary{
          {"instance_id", record.instance_id},
          {"solver_id", record.solver_id},
          {"best_energy", record.run.best_energy},
          {"elapsed_seconds", record.run.elapsed_seconds},
          {"attempted_flips", record.run.attempted_flips},
          {"accepted_flips", record.run.accepted_flips},
      };
      if (record.run.elapsed_seconds > 0.0) {
        summary["throughput_flips_per_second"] =
            hubo::throughput(record.run);
      }
      *out_summary_json = copy_string(summary.dump());
    }
    return HUBO_OK;
  });
}

int32_t hubo_cmd_bench(const char* spec_path, const char* overrides_json,
                       char** out_summary_json) {
  if (int32_t rc = require_arg(spec_path != nullptr, "spec_path")) return rc;
  return guarded([&] {
    hubo::BenchmarkSpec spec = hubo::BenchmarkSpec::from_json_file(spec_path);
    if (overrides_json && overrides_json[0] != '\0') {
      auto doc = nlohmann::json::parse(overrides_json);
      if (doc.contains("out_dir")) {
        spec.out_dir = doc["out_dir"].get<std::string>();
      }
      if (doc.contains("seed")) spec.seed = doc["seed"].get<uint64_t>();
      if (doc.contains("trials")) spec.trials = doc["trials"].get<int>();
      if (doc.contains("threads")) spec.threads = doc["threads"].get<int>();
    }
    hubo::BenchOutcome outcome = hubo::run_bench(spec);
    if (out_summary_json) {
      nlohmann::json summary{
          {"executed_cells", outcome.executed_cells},
          {"skipped_cells", outcome.skipped_cells},
          {"already_complete", outcome.already_complete},
          {"records_path", outcome.records_path},
          {"summary_path", outcome.summary_path},
      };
      *out_summary_json = copy_string(summary.dump());
    }
    return HUBO_OK;
  });
}

int32_t hubo_cmd_import(const char* trace_path, const char* instance_path,
                        const char* solver_label, const char* out_dir,
                        char** out_summary_json) {
  if (int32_t rc = require_arg(trace_path && out_dir,
                               "trace_path/out_dir")) {
    return rc;
  }
  return guarded([&] {
    hubo::ImportOutcome outcome = hubo::import_traces(
        trace_path, instance_path ? instance_path : "",
        solver_label ? solver_label : "", out_dir);
    if (out_summary_json) {
      nlohmann::json summary{
          {"accepted", outcome.accepted},
          {"flagged", outcome.flagged},
          {"unverifiable", outcome.unverifiable},
          {"records_path", outcome.records_path},
      };
      *out_summary_json = copy_string(summary.dump());
    }
    return HUBO_OK;
  });
}

int32_t hubo_cmd_report(const char* results_dir, const char* format,
                        const char* out_dir, char** out_report_path) {
  if (int32_t rc = require_arg(results_dir && format,
                               "results_dir/format")) {
    return rc;
  }
  return guarded([&] {
    const std::string path = hubo::write_report(
        results_dir, format, out_dir ? out_dir : "");
    if (out_report_path) *out_report_path = copy_string(path);
    return HUBO_OK;
  });
}

}  // extern "C"
