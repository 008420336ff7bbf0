#ifndef HUBOBENCH_H
#define HUBOBENCH_H

/* C interface to the hubobench core: Ising-form higher-order binary
 * optimization instances, classical solvers, staged pipelines, exact
 * enumeration, and the benchmark harness behind the CLI.
 *
 * Conventions:
 *   - Functions returning int32_t return HUBO_OK (0) on success or a
 *     nonzero error category; hubo_last_error() holds a thread-local
 *     message describing the most recent failure.
 *   - Objects are opaque handles released with their _free function.
 *   - Solver and pipeline configurations travel as JSON text; the
 *     accepted schemas are documented in the project README.
 *   - Spins are int8_t values +1 / -1.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HUBOBENCH_API __declspec(dllexport)
#else
#define HUBOBENCH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum {
  HUBO_OK = 0,
  HUBO_ERR_INVALID_ARGUMENT = 1,
  HUBO_ERR_PARSE = 2,
  HUBO_ERR_IO = 3,
  HUBO_ERR_CONTRACT = 4, /* pipeline stage broke the pass-through rule */
  HUBO_ERR_INTERNAL = 5
};

typedef struct hubo_instance hubo_instance;
typedef struct hubo_result hubo_result;

HUBOBENCH_API const char* hubo_version(void);
HUBOBENCH_API const char* hubo_last_error(void);
HUBOBENCH_API const char* hubo_status_name(int32_t status);

/* --- Instances --- */

HUBOBENCH_API int32_t hubo_instance_load(const char* path,
                                         hubo_instance** out);
HUBOBENCH_API int32_t hubo_instance_save(const hubo_instance* instance,
                                         const char* path);
/* family is "3S" or "4S"; the 156-variable benchmark families. */
HUBOBENCH_API int32_t hubo_instance_generate(const char* family,
                                             uint64_t seed,
                                             hubo_instance** out);
/* Desk-scale test instances with uniformly random mixed-arity supports. */
HUBOBENCH_API int32_t hubo_instance_random(int32_t n_vars, int32_t n_terms,
                                           uint64_t seed,
                                           hubo_instance** out);
HUBOBENCH_API void hubo_instance_free(hubo_instance* instance);

HUBOBENCH_API int32_t hubo_instance_n_vars(const hubo_instance* instance);
HUBOBENCH_API int64_t hubo_instance_n_terms(const hubo_instance* instance);
HUBOBENCH_API int32_t hubo_instance_energy(const hubo_instance* instance,
                                           const int8_t* spins,
                                           size_t n_spins,
                                           double* out_energy);
/* Number of invariant violations (0 for a well-formed instance). */
HUBOBENCH_API int32_t hubo_instance_validate(const hubo_instance* instance,
                                             int64_t* out_violations);

/* --- Solvers and pipelines --- */

/* config_json selects the algorithm: {"kind":"sa"|...} for a single
 * solver, {"kind":"pipeline","stages":[...]} for a staged run. */
HUBOBENCH_API int32_t hubo_run(const hubo_instance* instance,
                               const char* config_json, uint64_t seed,
                               int32_t n_threads, hubo_result** out);
HUBOBENCH_API void hubo_result_free(hubo_result* result);

HUBOBENCH_API int32_t hubo_result_best_energy(const hubo_result* result,
                                              double* out_energy);
/* Copies the best configuration; n_spins must equal the instance size. */
HUBOBENCH_API int32_t hubo_result_best_config(const hubo_result* result,
                                              int8_t* spins, size_t n_spins);
HUBOBENCH_API int64_t hubo_result_attempted_flips(const hubo_result* result);
HUBOBENCH_API int64_t hubo_result_accepted_flips(const hubo_result* result);
HUBOBENCH_API double hubo_result_elapsed_seconds(const hubo_result* result);
HUBOBENCH_API int64_t hubo_result_trace_len(const hubo_result* result);
HUBOBENCH_API int32_t hubo_result_trace_entry(const hubo_result* result,
                                              int64_t index,
                                              double* out_t_seconds,
                                              double* out_energy,
                                              int32_t* out_heartbeat);
/* Full result as a self-describing JSON record; free the string with
 * hubo_string_free. */
HUBOBENCH_API int32_t hubo_result_to_json(const hubo_result* result,
                                          char** out_json);
HUBOBENCH_API void hubo_string_free(char* text);

/* --- Exact enumeration and metrics --- */

/* Exhaustive Gray-code ground state; rejects instances above max_vars
 * (pass 0 for the default cap of 24). out_config may be NULL. */
HUBOBENCH_API int32_t hubo_ground_state(const hubo_instance* instance,
                                        int32_t max_vars, double* out_energy,
                                        int8_t* out_config,
                                        size_t n_spins,
                                        int64_t* out_degeneracy);
/* Time-to-solution at the target success probability; +infinity when
 * p_hit is zero. */
HUBOBENCH_API int32_t hubo_tts(double t_run_seconds, double p_hit,
                               double p_target, double* out_tts);
HUBOBENCH_API int32_t hubo_relative_gap(double e_candidate, double e_gs,
                                        double* out_gap);

/* --- Harness commands (the CLI is a thin wrapper over these) --- */

/* Writes `count` serialized instances plus a manifest into out_dir;
 * deterministic in (family, count, seed). */
HUBOBENCH_API int32_t hubo_cmd_gen(const char* family, int32_t count,
                                   uint64_t seed, const char* out_dir);
/* Runs one solver/pipeline on an instance file; appends a record under
 * out_dir (pass NULL or "" to skip persistence) and returns a JSON
 * summary. */
HUBOBENCH_API int32_t hubo_cmd_solve(const char* instance_path,
                                     const char* config_json, uint64_t seed,
                                     int32_t n_threads, const char* out_dir,
                                     char** out_summary_json);
/* Executes a benchmark spec file; overrides_json may carry out_dir,
 * seed, trials, threads. Completed cells are skipped (resumable). */
HUBOBENCH_API int32_t hubo_cmd_bench(const char* spec_path,
                                     const char* overrides_json,
                                     char** out_summary_json);
/* Ingests an external result trace (NDJSON); instance_path may be NULL
 * when no line carries spins. */
HUBOBENCH_API int32_t hubo_cmd_import(const char* trace_path,
                                      const char* instance_path,
                                      const char* solver_label,
                                      const char* out_dir,
                                      char** out_summary_json);
/* format: "summary-table" | "closeness-csv" | "tts-scatter-csv". */
HUBOBENCH_API int32_t hubo_cmd_report(const char* results_dir,
                                      const char* format,
                                      const char* out_dir,
                                      char** out_report_path);

#ifdef __cplusplus
}
#endif

#endif /* HUBOBENCH_H */
