#pragma once

#include <cstdint>
#include <fstream>
#include <mutex>
#include <string>
#include <vector>

#include "pipeline.hpp"
#include "solvers.hpp"

namespace hubo {

// One benchmark cell outcome, persisted as a single self-describing
// JSON line in an append-only log. Records replay without the spec
// file that produced them: the effective config is echoed into each
// one.
struct ResultRecord {
  int schema_version;
  std::string kind;  // "run" | "pipeline" | "imported"
  std::string instance_id;
  std::string solver_id;
  int trial = 0;
  uint64_t seed = 0;
  std::string config_json;  // canonical effective config ("" if imported)
  RunResult run;            // pipelines store their merged view here
  std::vector<PipelineStageRecord> stages;  // pipeline only
  double overhead_seconds = 0.0;            // pipeline only
  std::string provenance = "native";  // | "imported" | "imported-unverified"
  bool flagged = false;               // imported energy failed re-validation
  std::string flag_reason;
  int64_t t_start_unix_ms = 0;
  int64_t t_end_unix_ms = 0;
  std::string artifact_version;

  ResultRecord();
};

std::string record_to_json_line(const ResultRecord& record);
ResultRecord record_from_json_line(const std::string& line,
                                   const std::string& origin = "<line>");

// Reads every record in an NDJSON log. A truncated final line (crash
// mid-append) is skipped when tolerate_partial_tail is set; any other
// malformed line raises.
std::vector<ResultRecord> read_records(const std::string& path,
                                       bool tolerate_partial_tail = true);

// Serializes appends so the log stays one-record-per-line even when
// many worker cells finish concurrently.
class RecordAppender {
 public:
  explicit RecordAppender(const std::string& path);
  void append(const ResultRecord& record);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ofstream out_;
  std::mutex mutex_;
};

// Stable identity of a record with every time-dependent field removed
// (timestamps, elapsed, trace times, heartbeats): two deterministic
// runs of the same cell produce equal keys.
std::string record_determinism_key(const ResultRecord& record);

}  // namespace hubo
