#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "pliswt/manifest.hpp"
#include "pliswt/signal.hpp"

namespace pliswt {

/// A denoising method under test. It only ever receives the noisy signal.
struct Method {
  std::string name;
  std::function<Signal(const Signal& noisy)> run;
};

/// "swt" (wavelet denoiser) and "notch" (adaptive notch baseline).
std::vector<Method> default_methods(const ExperimentManifest& manifest);

struct ResultRow {
  std::string record;
  std::string method;
  double sir_db = 0.0;
  std::uint64_t seed = 0;  ///< interference seed of this trial
  double asci = 0.0;
  double runtime_ms = 0.0;
};

struct SummaryRow {
  std::string method;
  double sir_db = 0.0;
  double mean_asci = 0.0;
  double std_asci = 0.0;  ///< population convention
  std::size_t n = 0;
};

struct RowError {
  std::string record;
  std::string method;
  double sir_db = 0.0;
  std::uint64_t seed = 0;
  std::string message;
};

/// Per-minute ASCI diagnostic for one row.
struct WindowScore {
  std::string record;
  std::string method;
  double sir_db = 0.0;
  std::uint64_t seed = 0;
  std::size_t window = 0;
  double asci = 0.0;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;  ///< ordered by record, method, SIR, trial
  std::vector<SummaryRow> summary;
  std::vector<RowError> errors;
  std::vector<WindowScore> per_minute;
  std::vector<double> timings_ms;  ///< measured wall time, parallel to rows
};

/// Interference seed for one (trial, record, SIR) cell.
std::uint64_t trial_pli_seed(std::uint64_t trial_seed, std::size_t record_index,
                             std::size_t sir_index);

/// Loads or synthesizes a record at the manifest's working rate.
Signal load_record(const RecordSpec& record, const ExperimentManifest& manifest);

/**
 * For every record, SIR level and trial: synthesize interference, mix it at
 * the SIR, run each method on the noisy signal only and score ASCI against
 * the clean record. A failing record or method produces RowError entries;
 * the rest of the run continues. Row order does not depend on `jobs`.
 */
ExperimentResult run_experiment(const ExperimentManifest& manifest,
                                const std::vector<Method>& methods);
ExperimentResult run_experiment(const ExperimentManifest& manifest);

/// Mean and population std per (method, SIR), in method then SIR order.
std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows,
                                  const std::vector<std::string>& method_order,
                                  const std::vector<double>& sir_order);

/// rows.csv, summary.csv, errors.csv, per_minute.csv, timings.csv and
/// manifest.resolved.json under `dir`.
void write_experiment_outputs(const ExperimentResult& result, const ExperimentManifest& manifest,
                              const std::filesystem::path& dir);

struct TraceInfo {
  double scale = 0.0;
  std::uint64_t seed = 0;
  std::size_t rows = 0;
};

/// Writes sample-aligned columns t_s, clean, interference (scaled), noisy
/// and one column per method.
TraceInfo emit_traces(const Signal& clean, double sir_db, std::uint64_t pli_seed,
                      const PliConfig& pli, const std::vector<Method>& methods,
                      const std::filesystem::path& out_csv);

}  // namespace pliswt
