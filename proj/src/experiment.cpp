#include "pliswt/experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <map>
#include <optional>

#include "pliswt/csv_io.hpp"
#include "pliswt/denoiser.hpp"
#include "pliswt/ecg_synth.hpp"
#include "pliswt/metrics.hpp"
#include "pliswt/notch.hpp"
#include "pliswt/pli_synth.hpp"
#include "pliswt/resample.hpp"

namespace pliswt {
namespace {

struct CellOutput {
  std::vector<ResultRow> rows;
  std::vector<double> wall_ms;
  std::vector<RowError> errors;
  std::vector<WindowScore> per_minute;
};

struct Cell {
  std::size_t record;
  std::size_t sir;
  std::size_t trial;
};

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  return out;
}

}  // namespace

std::vector<Method> default_methods(const ExperimentManifest& manifest) {
  const DenoiseConfig denoise_cfg = manifest.denoise;
  const NotchConfig notch_cfg = manifest.notch;
  return {
      {"swt", [denoise_cfg](const Signal& noisy) { return denoise(noisy, denoise_cfg); }},
      {"notch", [notch_cfg](const Signal& noisy) { return adaptive_notch(noisy, notch_cfg); }},
  };
}

std::uint64_t trial_pli_seed(std::uint64_t trial_seed, std::size_t record_index,
                             std::size_t sir_index) {
  // splitmix64 finalizer over the packed cell coordinates
  std::uint64_t z = trial_seed ^ (0x9E3779B97F4A7C15ULL * (record_index + 1)) ^
                    (0xC2B2AE3D27D4EB4FULL * (sir_index + 1));
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return (z ^ (z >> 31)) >> 11;
}

Signal load_record(const RecordSpec& record, const ExperimentManifest& manifest) {
  if (record.source == RecordSpec::Source::synthetic) {
    return synth_ecg(record.duration_s, manifest.working_rate_hz, record.heart_rate_bpm,
                     record.seed, manifest.ecg)
        .signal;
  }
  const auto rate = record.sample_rate_hz > 0.0 ? std::optional<double>(record.sample_rate_hz)
                                                : std::nullopt;
  Signal s = load_signal_csv(record.path, rate);
  if (s.sample_rate_hz() != manifest.working_rate_hz) s = resample(s, manifest.working_rate_hz);
  return s;
}

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows,
                                  const std::vector<std::string>& method_order,
                                  const std::vector<double>& sir_order) {
  std::vector<SummaryRow> out;
  for (const auto& method : method_order) {
    for (double sir : sir_order) {
      std::vector<double> values;
      for (const auto& r : rows) {
        if (r.method == method && r.sir_db == sir) values.push_back(r.asci);
      }
      if (values.empty()) continue;
      SummaryRow s{.method = method, .sir_db = sir, .n = values.size()};
      for (double v : values) s.mean_asci += v;
      s.mean_asci /= static_cast<double>(values.size());
      double var = 0.0;
      for (double v : values) var += (v - s.mean_asci) * (v - s.mean_asci);
      s.std_asci = std::sqrt(var / static_cast<double>(values.size()));
      out.push_back(s);
    }
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentManifest& manifest,
                                const std::vector<Method>& methods) {
  manifest.validate();
  if (methods.empty()) throw InputError("no methods to evaluate");

  // Records are loaded once up front; a failure is remembered per record.
  std::vector<std::optional<Signal>> clean(manifest.records.size());
  std::vector<std::string> load_error(manifest.records.size());
  for (std::size_t r = 0; r < manifest.records.size(); ++r) {
    try {
      clean[r] = load_record(manifest.records[r], manifest);
    } catch (const std::exception& e) {
      load_error[r] = e.what();
    }
  }

  std::vector<Cell> cells;
  for (std::size_t r = 0; r < manifest.records.size(); ++r) {
    for (std::size_t s = 0; s < manifest.sir_db.size(); ++s) {
      for (std::size_t t = 0; t < static_cast<std::size_t>(manifest.trials); ++t) {
        cells.push_back({r, s, t});
      }
    }
  }

  auto run_cell = [&](const Cell& cell) {
    CellOutput out;
    const auto& record = manifest.records[cell.record];
    const double sir = manifest.sir_db[cell.sir];
    const std::uint64_t seed =
        trial_pli_seed(manifest.trial_seeds[cell.trial], cell.record, cell.sir);
    auto fail_all = [&](const std::string& msg) {
      for (const auto& m : methods) out.errors.push_back({record.id, m.name, sir, seed, msg});
    };
    if (!clean[cell.record]) {
      fail_all(load_error[cell.record]);
      return out;
    }
    const Signal& x = *clean[cell.record];

    std::optional<Signal> noisy;
    try {
      PliConfig pli = manifest.pli;
      pli.seed = seed;
      const Signal interference = synthesize_pli(x.duration_s(), x.sample_rate_hz(), pli);
      noisy = mix_at_sir(x, interference, SirLevelDb(sir)).noisy;
    } catch (const std::exception& e) {
      fail_all(e.what());
      return out;
    }

    const auto prefix =
        static_cast<std::size_t>(std::llround(manifest.excluded_prefix_s * x.sample_rate_hz()));
    const auto minute = static_cast<std::size_t>(std::llround(60.0 * x.sample_rate_hz()));
    for (const auto& method : methods) {
      try {
        const auto t0 = std::chrono::steady_clock::now();
        const Signal estimate = method.run(*noisy);
        const auto t1 = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        const auto report = asci(x, estimate, std::nullopt, prefix);
        out.rows.push_back({record.id, method.name, sir, seed, report.value,
                            manifest.record_runtime ? ms : 0.0});
        out.wall_ms.push_back(ms);
        const auto windows = asci_windows(report, minute);
        for (std::size_t w = 0; w < windows.size(); ++w) {
          out.per_minute.push_back({record.id, method.name, sir, seed, w, windows[w]});
        }
      } catch (const std::exception& e) {
        out.errors.push_back({record.id, method.name, sir, seed, e.what()});
      }
    }
    return out;
  };

  std::vector<CellOutput> outputs(cells.size());
  if (manifest.jobs <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) outputs[i] = run_cell(cells[i]);
  } else {
    const auto batch = static_cast<std::size_t>(manifest.jobs);
    for (std::size_t start = 0; start < cells.size(); start += batch) {
      std::vector<std::future<CellOutput>> pending;
      for (std::size_t i = start; i < std::min(cells.size(), start + batch); ++i) {
        pending.push_back(std::async(std::launch::async, run_cell, cells[i]));
      }
      for (std::size_t k = 0; k < pending.size(); ++k) outputs[start + k] = pending[k].get();
    }
  }

  // Cells are record-major; reorder rows to record, method, SIR, trial.
  ExperimentResult result;
  std::vector<double> wall;
  for (std::size_t r = 0; r < manifest.records.size(); ++r) {
    for (const auto& method : methods) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].record != r) continue;
        const auto& o = outputs[i];
        for (std::size_t k = 0; k < o.rows.size(); ++k) {
          if (o.rows[k].method != method.name) continue;
          result.rows.push_back(o.rows[k]);
          wall.push_back(o.wall_ms[k]);
        }
        for (const auto& e : o.errors) {
          if (e.method == method.name) result.errors.push_back(e);
        }
        for (const auto& w : o.per_minute) {
          if (w.method == method.name) result.per_minute.push_back(w);
        }
      }
    }
  }
  std::vector<std::string> names;
  for (const auto& m : methods) names.push_back(m.name);
  result.summary = summarize(result.rows, names, manifest.sir_db);
  // Wall-clock runtimes travel in the rows only when requested; keep the
  // measured values for timings.csv regardless.
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    if (!manifest.record_runtime) result.rows[i].runtime_ms = 0.0;
  }
  result.timings_ms = std::move(wall);
  return result;
}

ExperimentResult run_experiment(const ExperimentManifest& manifest) {
  return run_experiment(manifest, default_methods(manifest));
}

void write_experiment_outputs(const ExperimentResult& result, const ExperimentManifest& manifest,
                              const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    auto out = open_out(dir / "rows.csv");
    out << "record,method,sir_db,seed,asci,runtime_ms\n";
    for (const auto& r : result.rows) {
      out << r.record << ',' << r.method << ',' << format_double(r.sir_db) << ',' << r.seed << ','
          << format_double(r.asci) << ',' << format_double(r.runtime_ms) << '\n';
    }
  }
  {
    auto out = open_out(dir / "summary.csv");
    out << "method,sir_db,mean_asci,std_asci,n\n";
    for (const auto& s : result.summary) {
      out << s.method << ',' << format_double(s.sir_db) << ',' << format_double(s.mean_asci) << ','
          << format_double(s.std_asci) << ',' << s.n << '\n';
    }
  }
  {
    auto out = open_out(dir / "errors.csv");
    out << "record,method,sir_db,seed,message\n";
    for (const auto& e : result.errors) {
      std::string msg = e.message;
      for (char& c : msg) {
        if (c == ',' || c == '\n') c = ';';
      }
      out << e.record << ',' << e.method << ',' << format_double(e.sir_db) << ',' << e.seed << ','
          << msg << '\n';
    }
  }
  {
    auto out = open_out(dir / "per_minute.csv");
    out << "record,method,sir_db,seed,minute,asci\n";
    for (const auto& w : result.per_minute) {
      out << w.record << ',' << w.method << ',' << format_double(w.sir_db) << ',' << w.seed << ','
          << w.window << ',' << format_double(w.asci) << '\n';
    }
  }
  {
    auto out = open_out(dir / "timings.csv");
    out << "record,method,sir_db,seed,runtime_ms\n";
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
      const auto& r = result.rows[i];
      const double ms = i < result.timings_ms.size() ? result.timings_ms[i] : 0.0;
      out << r.record << ',' << r.method << ',' << format_double(r.sir_db) << ',' << r.seed << ','
          << format_double(ms) << '\n';
    }
  }
  auto out = open_out(dir / "manifest.resolved.json");
  out << dump_manifest(manifest);
}

TraceInfo emit_traces(const Signal& clean, double sir_db, std::uint64_t pli_seed,
                      const PliConfig& pli, const std::vector<Method>& methods,
                      const std::filesystem::path& out_csv) {
  PliConfig cfg = pli;
  cfg.seed = pli_seed;
  const Signal interference = synthesize_pli(clean.duration_s(), clean.sample_rate_hz(), cfg);
  const auto mixed = mix_at_sir(clean, interference, SirLevelDb(sir_db));

  std::vector<Signal> estimates;
  for (const auto& m : methods) estimates.push_back(m.run(mixed.noisy));

  if (out_csv.has_parent_path()) std::filesystem::create_directories(out_csv.parent_path());
  std::ofstream out(out_csv, std::ios::binary);
  if (!out) throw InputError("cannot write traces to " + out_csv.string());
  out << "t_s,clean,interference,noisy";
  for (const auto& m : methods) out << ',' << m.name;
  out << '\n';
  for (std::size_t i = 0; i < clean.size(); ++i) {
    out << format_double(static_cast<double>(i) / clean.sample_rate_hz()) << ','
        << format_double(clean[i]) << ',' << format_double(mixed.scale * interference[i]) << ','
        << format_double(mixed.noisy[i]);
    for (const auto& e : estimates) out << ',' << format_double(e[i]);
    out << '\n';
  }
  if (!out) throw InputError("write failed: " + out_csv.string());
  return {mixed.scale, pli_seed, clean.size()};
}

}  // namespace pliswt
