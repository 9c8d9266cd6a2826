#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pliswt/denoiser.hpp"
#include "pliswt/ecg_synth.hpp"
#include "pliswt/notch.hpp"
#include "pliswt/pli_synth.hpp"

namespace pliswt {

struct RecordSpec {
  enum class Source { synthetic, csv };

  std::string id;
  Source source = Source::synthetic;
  // synthetic
  double duration_s = 60.0;
  double heart_rate_bpm = 70.0;
  std::uint64_t seed = 0;
  // csv
  std::filesystem::path path;
  double sample_rate_hz = 0.0;  ///< 0: take it from the file header
};

/// Everything that determines a benchmark run. Seeds are always explicit
/// once a manifest has been resolved.
struct ExperimentManifest {
  std::vector<RecordSpec> records;
  std::vector<double> sir_db{15.0, 10.0, 5.0, 0.0, -5.0, -10.0};
  int trials = 3;
  std::uint64_t base_seed = 20190901;
  std::vector<std::uint64_t> trial_seeds;  ///< one per trial
  double working_rate_hz = 1000.0;
  double excluded_prefix_s = 1.0;
  bool record_runtime = false;  ///< write measured runtimes into rows.csv
  int jobs = 1;
  std::filesystem::path output_dir = "bench_out";
  PliConfig pli{};
  DenoiseConfig denoise{};
  NotchConfig notch{};
  EcgSynthOptions ecg{};

  void validate() const;
};

/// Ten 60 s synthetic records, six SIR levels, three trials.
ExperimentManifest default_manifest();

/// Parses a JSON manifest; absent keys take the defaults, and trial seeds
/// and synthetic records are materialized. Throws InputError when invalid.
ExperimentManifest parse_manifest(std::string_view json_text);
ExperimentManifest load_manifest(const std::filesystem::path& path);

/// Fully resolved manifest as pretty JSON.
std::string dump_manifest(const ExperimentManifest& manifest);

}  // namespace pliswt
