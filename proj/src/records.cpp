#include "records.hpp"

#include <mutex>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "instance_io.hpp"
#include "version.hpp"

namespace hubo {

using nlohmann::json;

ResultRecord::ResultRecord()
    : schema_version(kRecordSchemaVersion), artifact_version(kVersion) {}

namespace {

json trace_to_json(const std::vector<TraceEntry>& trace) {
  json arr = json::array();
  for (const TraceEntry& e : trace) {
    if (e.heartbeat) {
      arr.push_back({e.t_seconds, e.energy, 1});
    } else {
      arr.push_back({e.t_seconds, e.energy});
    }
  }
  return arr;
}

std::vector<TraceEntry> trace_from_json(const json& arr,
                                        const std::string& origin) {
  std::vector<TraceEntry> trace;
  for (const json& e : arr) {
    if (!e.is_array() || e.size() < 2) {
      throw std::runtime_error(origin + ": malformed trace entry");
    }
    TraceEntry entry;
    entry.t_seconds = e[0].get<double>();
    entry.energy = e[1].get<double>();
    entry.heartbeat = e.size() > 2 && e[2].get<int>() != 0;
    trace.push_back(entry);
  }
  return trace;
}

}  // namespace

std::string record_to_json_line(const ResultRecord& r) {
  json payload{
      {"best_energy", r.run.best_energy},
      {"best_config", config_to_string(r.run.best_config)},
      {"trace", trace_to_json(r.run.trace)},
      {"attempted_flips", r.run.attempted_flips},
      {"accepted_flips", r.run.accepted_flips},
      {"elapsed_seconds", r.run.elapsed_seconds},
  };
  if (!r.run.exchange_acceptance.empty()) {
    payload["exchange_acceptance"] = r.run.exchange_acceptance;
  }
  json doc{
      {"schema_version", r.schema_version},
      {"kind", r.kind},
      {"instance_id", r.instance_id},
      {"solver_id", r.solver_id},
      {"trial", r.trial},
      {"seed", r.seed},
      {"provenance", r.provenance},
      {"t_start_unix_ms", r.t_start_unix_ms},
      {"t_end_unix_ms", r.t_end_unix_ms},
      {"artifact_version", r.artifact_version},
      {"payload", std::move(payload)},
  };
  if (!r.config_json.empty()) {
    doc["config"] = json::parse(r.config_json);
  }
  if (r.kind == "pipeline") {
    json stages = json::array();
    for (const PipelineStageRecord& s : r.stages) {
      stages.push_back({{"label", s.label},
                        {"best_energy", s.best_energy},
                        {"seconds", s.seconds}});
    }
    doc["stages"] = std::move(stages);
    doc["overhead_seconds"] = r.overhead_seconds;
  }
  if (r.flagged) {
    doc["flagged"] = true;
    doc["flag_reason"] = r.flag_reason;
  }
  return doc.dump();
}

ResultRecord record_from_json_line(const std::string& line,
                                   const std::string& origin) {
  json doc;
  try {
    doc = json::parse(line);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(origin + ": record parse error: " + e.what());
  }
  ResultRecord r;
  try {
    r.schema_version = doc.at("schema_version").get<int>();
    if (r.schema_version != kRecordSchemaVersion) {
      throw std::runtime_error("unsupported record schema_version " +
                               std::to_string(r.schema_version));
    }
    r.kind = doc.at("kind").get<std::string>();
    r.instance_id = doc.at("instance_id").get<std::string>();
    r.solver_id = doc.at("solver_id").get<std::string>();
    r.trial = doc.at("trial").get<int>();
    r.seed = doc.at("seed").get<uint64_t>();
    r.provenance = doc.value("provenance", std::string("native"));
    r.t_start_unix_ms = doc.value("t_start_unix_ms", int64_t{0});
    r.t_end_unix_ms = doc.value("t_end_unix_ms", int64_t{0});
    r.artifact_version = doc.value("artifact_version", std::string());
    if (doc.contains("config")) {
      r.config_json = doc["config"].dump();
    }
    const json& p = doc.at("payload");
    r.run.solver_id = r.solver_id;
    r.run.best_energy = p.at("best_energy").get<double>();
    r.run.best_config = config_from_string(
        p.at("best_config").get<std::string>());
    r.run.trace = trace_from_json(p.at("trace"), origin);
    r.run.attempted_flips = p.at("attempted_flips").get<int64_t>();
    r.run.accepted_flips = p.at("accepted_flips").get<int64_t>();
    r.run.elapsed_seconds = p.at("elapsed_seconds").get<double>();
    if (p.contains("exchange_acceptance")) {
      r.run.exchange_acceptance =
          p["exchange_acceptance"].get<std::vector<double>>();
    }
    if (r.kind == "pipeline") {
      for (const json& s : doc.at("stages")) {
        r.stages.push_back({s.at("label").get<std::string>(),
                            s.at("best_energy").get<double>(),
                            s.at("seconds").get<double>()});
      }
      r.overhead_seconds = doc.value("overhead_seconds", 0.0);
    }
    r.flagged = doc.value("flagged", false);
    r.flag_reason = doc.value("flag_reason", std::string());
  } catch (const json::exception& e) {
    throw std::runtime_error(origin + ": record field error: " + e.what());
  }
  return r;
}

std::vector<ResultRecord> read_records(const std::string& path,
                                       bool tolerate_partial_tail) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open record log " + path);
  }
  std::vector<ResultRecord> records;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    line_no++;
    if (line.empty()) continue;
    const std::string origin = path + ":" + std::to_string(line_no);
    try {
      records.push_back(record_from_json_line(line, origin));
    } catch (const std::runtime_error&) {
      // A torn final line is the expected crash artifact; anything
      // else is real corruption.
      const bool at_tail = in.peek() == EOF;
      if (tolerate_partial_tail && at_tail) break;
      throw;
    }
  }
  return records;
}

RecordAppender::RecordAppender(const std::string& path)
    : path_(path), out_(path, std::ios::app | std::ios::binary) {
  if (!out_) {
    throw std::runtime_error("cannot open record log " + path +
                             " for appending");
  }
}

void RecordAppender::append(const ResultRecord& record) {
  const std::string line = record_to_json_line(record);
  std::lock_guard<std::mutex> lock(mutex_);
  out_ << line << "\n";
  out_.flush();
  if (!out_.good()) {
    throw std::runtime_error("append failed for record log " + path_);
  }
}

std::string record_determinism_key(const ResultRecord& r) {
  // Whitespace-insensitive canonical form of the config.
  std::string config = r.config_json;
  if (!config.empty()) config = json::parse(config).dump();
  std::ostringstream out;
  out << r.kind << "|" << r.instance_id << "|" << r.solver_id << "|"
      << r.trial << "|" << r.seed << "|" << config << "|"
      << format_coeff(r.run.best_energy) << "|"
      << config_to_string(r.run.best_config) << "|" << r.run.attempted_flips
      << "|" << r.run.accepted_flips << "|";
  for (const TraceEntry& e : r.run.trace) {
    if (!e.heartbeat) out << format_coeff(e.energy) << ",";
  }
  out << "|";
  for (const PipelineStageRecord& s : r.stages) {
    out << s.label << ":" << format_coeff(s.best_energy) << ";";
  }
  out << "|" << r.provenance << "|" << (r.flagged ? 1 : 0);
  return out.str();
}

}  // namespace hubo
