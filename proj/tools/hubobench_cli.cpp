// Command-line harness over the hubobench shared library. Every
// operation goes through the C API in hubobench.h; this file only
// parses arguments, shuttles JSON, and formats output.

#include <hubobench.h>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

namespace {

int fail(int32_t status) {
  std::cerr << "error[" << hubo_status_name(status)
            << "]: " << hubo_last_error() << "\n";
  return status;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) {
    throw CLI::ValidationError("cannot open file " + path);
  }
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

struct FreeString {
  char* value = nullptr;
  ~FreeString() { hubo_string_free(value); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "hubobench: generate, solve, and benchmark higher-order "
      "Ising-form binary optimization instances"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(hubo_version()));

  uint64_t seed = 0;
  int threads = 1;
  std::string out;
  app.add_option("--seed", seed, "Global seed")->capture_default_str();
  app.add_option("--threads", threads, "Worker threads")
      ->capture_default_str();
  app.add_option("--out", out, "Output directory");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate benchmark instances");
  std::string family = "3S";
  int count = 1;
  gen->add_option("--family", family, "Instance family (3S or 4S)")
      ->capture_default_str();
  gen->add_option("--count", count, "Number of instances")
      ->capture_default_str();

  // solve
  auto* solve = app.add_subcommand("solve", "Run one solver on an instance");
  std::string instance_path, config_inline, config_file;
  solve->add_option("instance", instance_path, "Instance file")->required();
  solve->add_option("--config", config_inline,
                    "Solver/pipeline config as inline JSON");
  solve->add_option("--config-file", config_file,
                    "Solver/pipeline config file");

  // bench
  auto* bench = app.add_subcommand("bench", "Run a benchmark spec");
  std::string spec_path;
  bench->add_option("spec", spec_path, "Benchmark spec file")->required();

  // import
  auto* import_cmd =
      app.add_subcommand("import", "Ingest an external result trace");
  std::string trace_path, import_instance, label;
  import_cmd->add_option("trace", trace_path, "Trace file (NDJSON)")
      ->required();
  import_cmd->add_option("--instance", import_instance,
                         "Instance file for re-validating spins");
  import_cmd->add_option("--label", label, "Solver label for the records");

  // report
  auto* report = app.add_subcommand("report", "Emit report files");
  std::string results_dir, format = "summary-table";
  report->add_option("results", results_dir, "Results directory")
      ->required();
  report->add_option("--format", format,
                     "summary-table | closeness-csv | tts-scatter-csv")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    if (out.empty()) {
      std::cerr << "error[invalid-argument]: gen needs --out\n";
      return HUBO_ERR_INVALID_ARGUMENT;
    }
    if (int32_t rc = hubo_cmd_gen(family.c_str(), count, seed, out.c_str())) {
      return fail(rc);
    }
    std::cout << "wrote " << count << " " << family << " instance(s) to "
              << out << "\n";
    return 0;
  }

  if (solve->parsed()) {
    std::string config = config_inline;
    if (config.empty() && !config_file.empty()) {
      config = read_file(config_file);
    }
    if (config.empty()) {
      config = R"({"kind": "sa"})";
    }
    FreeString summary;
    if (int32_t rc = hubo_cmd_solve(instance_path.c_str(), config.c_str(),
                                    seed, threads,
                                    out.empty() ? nullptr : out.c_str(),
                                    &summary.value)) {
      return fail(rc);
    }
    std::cout << summary.value << "\n";
    return 0;
  }

  if (bench->parsed()) {
    std::ostringstream overrides;
    overrides << "{";
    bool first = true;
    auto emit = [&](const std::string& fragment) {
      overrides << (first ? "" : ", ") << fragment;
      first = false;
    };
    if (!out.empty()) emit("\"out_dir\": \"" + out + "\"");
    if (app.count("--seed")) {
      emit("\"seed\": " + std::to_string(seed));
    }
    if (app.count("--threads")) {
      emit("\"threads\": " + std::to_string(threads));
    }
    overrides << "}";
    FreeString summary;
    if (int32_t rc = hubo_cmd_bench(spec_path.c_str(),
                                    overrides.str().c_str(),
                                    &summary.value)) {
      return fail(rc);
    }
    std::cout << summary.value << "\n";
    return 0;
  }

  if (import_cmd->parsed()) {
    if (out.empty()) {
      std::cerr << "error[invalid-argument]: import needs --out\n";
      return HUBO_ERR_INVALID_ARGUMENT;
    }
    FreeString summary;
    if (int32_t rc = hubo_cmd_import(
            trace_path.c_str(),
            import_instance.empty() ? nullptr : import_instance.c_str(),
            label.empty() ? nullptr : label.c_str(), out.c_str(),
            &summary.value)) {
      return fail(rc);
    }
    std::cout << summary.value << "\n";
    return 0;
  }

  if (report->parsed()) {
    FreeString path;
    if (int32_t rc = hubo_cmd_report(results_dir.c_str(), format.c_str(),
                                     out.empty() ? nullptr : out.c_str(),
                                     &path.value)) {
      return fail(rc);
    }
    std::cout << path.value << "\n";
    return 0;
  }

  return 0;
}
