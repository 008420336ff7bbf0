#pragma once

#include <string>
#include <vector>

namespace hubo {

// Report emitters over a results directory (records.ndjson +
// summary.json). Pure readers: nothing upstream changes when a report
// is rerun. CSVs are headered, RFC-4180 quoted, energies at 17
// significant digits; infinite TTS prints as "inf".
//
//   summary-table  - per-solver finite TTS range, dagger count of
//                    infinite entries, geometric mean over finite.
//   closeness-csv  - per-solver closeness mean/sigma over a shared
//                    log-spaced time grid.
//   tts-scatter-csv - per-instance TTS points with per-solver medians.
//
// Returns the path of the written file.
std::string write_report(const std::string& results_dir,
                         const std::string& format,
                         const std::string& out_dir);

std::vector<std::string> report_formats();

// RFC-4180 field quoting.
std::string csv_escape(const std::string& field);

}  // namespace hubo
