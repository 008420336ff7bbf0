#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "bench.hpp"
#include "instance_io.hpp"
#include "metrics.hpp"
#include "records.hpp"

namespace hubo {

namespace fs = std::filesystem;

namespace {

std::string num(double v) {
  if (std::isinf(v)) return "inf";
  return format_coeff(v);
}

BenchSummary load_summary(const fs::path& dir) {
  const fs::path path = dir / "summary.json";
  std::ifstream f(path);
  if (!f) {
    throw std::runtime_error(
        "results directory has no summary.json (run the bench first): " +
        path.string());
  }
  std::ostringstream buf;
  buf << f.rdbuf();
  return summary_from_json(buf.str());
}

std::string write_lines(const fs::path& out_path,
                        const std::vector<std::string>& lines) {
  std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
  if (!f) {
    throw std::runtime_error("cannot write report " + out_path.string());
  }
  for (const std::string& line : lines) f << line << "\r\n";
  return out_path.string();
}

std::string summary_table(const fs::path& results_dir,
                          const fs::path& out_dir) {
  BenchSummary summary = load_summary(results_dir);
  if (summary.cells.empty()) {
    throw std::runtime_error("no results to report");
  }
  std::vector<std::string> lines;
  lines.push_back(
      "solver,n_instances,n_finite,n_infinite_dagger,tts_min_seconds,"
      "tts_max_seconds,tts_geometric_mean_seconds");
  for (const SolverSummary& s : summary.solvers) {
    std::ostringstream row;
    row << csv_escape(s.solver_id) << "," << s.n_instances << ","
        << s.n_finite << "," << s.n_infinite << ",";
    if (s.n_finite > 0) {
      row << num(s.tts_min) << "," << num(s.tts_max) << ",";
    } else {
      row << ",,";
    }
    if (s.tts_geometric_mean) {
      row << num(*s.tts_geometric_mean);
    }
    lines.push_back(row.str());
  }
  return write_lines(out_dir / "summary_table.csv", lines);
}

std::string tts_scatter(const fs::path& results_dir, const fs::path& out_dir) {
  BenchSummary summary = load_summary(results_dir);
  if (summary.cells.empty()) {
    throw std::runtime_error("no results to report");
  }
  std::map<std::string, std::vector<double>> finite_by_solver;
  for (const CellSummary& c : summary.cells) {
    if (!std::isinf(c.tts_seconds)) {
      finite_by_solver[c.solver_id].push_back(c.tts_seconds);
    }
  }
  std::map<std::string, double> median;
  for (auto& [solver, values] : finite_by_solver) {
    std::sort(values.begin(), values.end());
    const size_t n = values.size();
    median[solver] =
        n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
  }
  std::vector<std::string> lines;
  lines.push_back(
      "solver,instance,tts_seconds,is_infinite,solver_median_seconds");
  for (const CellSummary& c : summary.cells) {
    std::ostringstream row;
    row << csv_escape(c.solver_id) << "," << csv_escape(c.instance_id) << ","
        << num(c.tts_seconds) << "," << (std::isinf(c.tts_seconds) ? 1 : 0)
        << ",";
    if (auto it = median.find(c.solver_id); it != median.end()) {
      row << num(it->second);
    }
    lines.push_back(row.str());
  }
  return write_lines(out_dir / "tts_scatter.csv", lines);
}

std::string closeness(const fs::path& results_dir, const fs::path& out_dir) {
  BenchSummary summary = load_summary(results_dir);
  std::vector<ResultRecord> records =
      read_records((results_dir / "records.ndjson").string());
  if (records.empty()) {
    throw std::runtime_error("no results to report");
  }
  // solver -> instance -> traces
  std::map<std::string, std::map<std::string, std::vector<std::vector<TraceEntry>>>>
      by_solver;
  for (ResultRecord& r : records) {
    by_solver[r.solver_id][r.instance_id].push_back(std::move(r.run.trace));
  }
  std::vector<std::string> lines;
  lines.push_back("solver,t_seconds,mean_closeness,sigma_closeness,"
                  "n_instances_defined");
  for (auto& [solver, instances] : by_solver) {
    std::vector<InstanceTraces> groups;
    for (auto& [instance_id, traces] : instances) {
      auto target = summary.targets.find(instance_id);
      if (target == summary.targets.end()) {
        throw std::runtime_error("no target energy recorded for instance " +
                                 instance_id);
      }
      InstanceTraces group;
      group.instance_id = instance_id;
      group.e_target = target->second.e_target;
      group.traces = std::move(traces);
      groups.push_back(std::move(group));
    }
    ClosenessCurve curve =
        closeness_curve(groups, default_time_grid(groups));
    for (size_t g = 0; g < curve.grid.size(); ++g) {
      if (curve.n_defined[g] == 0) continue;
      std::ostringstream row;
      row << csv_escape(solver) << "," << num(curve.grid[g]) << ","
          << num(curve.mean[g]) << "," << num(curve.sigma[g]) << ","
          << curve.n_defined[g];
      lines.push_back(row.str());
    }
  }
  return write_lines(out_dir / "closeness.csv", lines);
}

}  // namespace

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::vector<std::string> report_formats() {
  return {"summary-table", "closeness-csv", "tts-scatter-csv"};
}

std::string write_report(const std::string& results_dir,
                         const std::string& format,
                         const std::string& out_dir) {
  const fs::path results(results_dir);
  const fs::path out(out_dir.empty() ? results_dir : out_dir);
  fs::create_directories(out);
  if (format == "summary-table") return summary_table(results, out);
  if (format == "closeness-csv") return closeness(results, out);
  if (format == "tts-scatter-csv") return tts_scatter(results, out);
  throw std::invalid_argument(
      "unknown report format \"" + format +
      "\" (expected summary-table | closeness-csv | tts-scatter-csv)");
}

}  // namespace hubo
