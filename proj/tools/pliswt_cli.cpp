// Command-line front end: signal synthesis, denoising, scoring and the
// benchmark harness.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pliswt/csv_io.hpp"
#include "pliswt/denoiser.hpp"
#include "pliswt/ecg_synth.hpp"
#include "pliswt/experiment.hpp"
#include "pliswt/manifest.hpp"
#include "pliswt/metrics.hpp"
#include "pliswt/notch.hpp"
#include "pliswt/pli_synth.hpp"
#include "pliswt/resample.hpp"

using namespace pliswt;

namespace {

std::optional<double> opt_rate(double rate) {
  return rate > 0.0 ? std::optional<double>(rate) : std::nullopt;
}

void print_summary(const ExperimentResult& result) {
  std::printf("%-8s %8s %10s %10s %4s\n", "method", "sir_db", "mean_asci", "std_asci", "n");
  for (const auto& s : result.summary) {
    std::printf("%-8s %8.1f %10.4f %10.4f %4zu\n", s.method.c_str(), s.sir_db, s.mean_asci,
                s.std_asci, s.n);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Powerline interference removal from ECG with a stationary wavelet transform"};
  app.require_subcommand(1);

  // denoise
  std::string in_path, out_path, method = "swt";
  double rate = 0.0;
  DenoiseConfig dcfg;
  NotchConfig ncfg;
  auto* denoise_cmd = app.add_subcommand("denoise", "Remove powerline interference from a CSV signal");
  denoise_cmd->add_option("input", in_path, "Input CSV")->required();
  denoise_cmd->add_option("output", out_path, "Output CSV")->required();
  denoise_cmd->add_option("--rate", rate, "Sample rate in Hz (overrides the file header)");
  denoise_cmd->add_option("--method", method, "swt or notch")->check(CLI::IsMember({"swt", "notch"}));
  denoise_cmd->add_option("--levels", dcfg.levels, "Wavelet levels")->capture_default_str();
  denoise_cmd->add_option("--wavelet-order", dcfg.wavelet_order, "Daubechies order (db<N>)")->capture_default_str();
  denoise_cmd->add_option("--median-window-ms", dcfg.median_window_ms, "Threshold window")->capture_default_str();
  denoise_cmd->add_option("--qrs-window-ms", dcfg.qrs_window_ms, "QRS region width")->capture_default_str();
  denoise_cmd->add_option("--notch-rate", ncfg.adaptation_rate, "Notch adaptation rate")->capture_default_str();
  denoise_cmd->add_option("--notch-radius", ncfg.notch_pole_radius, "Notch pole radius")->capture_default_str();
  denoise_cmd->add_option("--mains-hz", ncfg.fundamental_hz, "Notch nominal mains frequency")->capture_default_str();

  // synth-pli
  double duration = 60.0, synth_rate = 1000.0;
  PliConfig pcfg;
  auto* pli_cmd = app.add_subcommand("synth-pli", "Synthesize powerline interference");
  pli_cmd->add_option("output", out_path, "Output CSV")->required();
  pli_cmd->add_option("--duration", duration, "Seconds")->capture_default_str();
  pli_cmd->add_option("--rate", synth_rate, "Sample rate in Hz")->capture_default_str();
  pli_cmd->add_option("--seed", pcfg.seed, "Random seed")->capture_default_str();
  pli_cmd->add_option("--fundamental", pcfg.fundamental_hz, "Mains frequency in Hz")->capture_default_str();
  pli_cmd->add_option("--tolerance", pcfg.freq_tolerance_fraction, "Frequency tolerance fraction")->capture_default_str();
  pli_cmd->add_option("--mod-depth", pcfg.amplitude_mod_depth, "Amplitude modulation depth")->capture_default_str();
  pli_cmd->add_option("--drift-bandwidth", pcfg.drift_bandwidth_hz, "Drift bandwidth in Hz")->capture_default_str();
  pli_cmd->add_option("--harmonic-caps", pcfg.harmonic_power_caps, "Power caps of harmonics 2..5")->expected(4);

  // synth-ecg
  double bpm = 70.0;
  std::uint64_t ecg_seed = 1;
  EcgSynthOptions eopt;
  std::string beats_path;
  auto* ecg_cmd = app.add_subcommand("synth-ecg", "Synthesize a clean ECG");
  ecg_cmd->add_option("output", out_path, "Output CSV")->required();
  ecg_cmd->add_option("--duration", duration, "Seconds")->capture_default_str();
  ecg_cmd->add_option("--rate", synth_rate, "Sample rate in Hz")->capture_default_str();
  ecg_cmd->add_option("--bpm", bpm, "Heart rate")->capture_default_str();
  ecg_cmd->add_option("--seed", ecg_seed, "Random seed")->capture_default_str();
  ecg_cmd->add_option("--rr-jitter", eopt.rr_jitter_fraction, "RR std relative to the mean")->capture_default_str();
  ecg_cmd->add_option("--beats", beats_path, "Also write R-peak times (s) to this file");

  // mix
  std::string clean_path, pli_path;
  double sir = 0.0;
  auto* mix_cmd = app.add_subcommand("mix", "Add interference to a clean signal at a target SIR");
  mix_cmd->add_option("clean", clean_path, "Clean CSV")->required();
  mix_cmd->add_option("interference", pli_path, "Interference CSV")->required();
  mix_cmd->add_option("output", out_path, "Noisy CSV")->required();
  mix_cmd->add_option("--sir", sir, "Target SIR in dB")->required();
  mix_cmd->add_option("--rate", rate, "Sample rate in Hz for files without a header");

  // asci
  std::string ref_path, est_path;
  std::optional<double> xi;
  double prefix_s = 0.0;
  auto* asci_cmd = app.add_subcommand("asci", "Score an estimate against a clean reference");
  asci_cmd->add_option("reference", ref_path, "Clean CSV")->required();
  asci_cmd->add_option("estimate", est_path, "Estimate CSV")->required();
  asci_cmd->add_option("--xi", xi, "Agreement tolerance (default 5% of the reference std)");
  asci_cmd->add_option("--prefix-s", prefix_s, "Seconds excluded from the start")->capture_default_str();
  asci_cmd->add_option("--rate", rate, "Sample rate in Hz for files without a header");

  // resample
  double target = 1000.0;
  auto* rs_cmd = app.add_subcommand("resample", "Rational-rate resampling");
  rs_cmd->add_option("input", in_path, "Input CSV")->required();
  rs_cmd->add_option("output", out_path, "Output CSV")->required();
  rs_cmd->add_option("--target", target, "Target rate in Hz")->capture_default_str();
  rs_cmd->add_option("--rate", rate, "Source rate in Hz (overrides the file header)");

  // bench
  std::string manifest_path, out_dir;
  int jobs = 0;
  bool print_manifest = false;
  auto* bench_cmd = app.add_subcommand("bench", "Run the SIR benchmark described by a manifest");
  bench_cmd->add_option("manifest", manifest_path, "JSON manifest (default corpus when omitted)");
  bench_cmd->add_option("--out", out_dir, "Output directory (overrides the manifest)");
  bench_cmd->add_option("--jobs", jobs, "Concurrent trials (overrides the manifest)");
  bench_cmd->add_flag("--print-manifest", print_manifest, "Print the resolved manifest and exit");

  // traces
  std::string record_path;
  std::uint64_t trace_seed = 1;
  auto* tr_cmd = app.add_subcommand("traces", "Write aligned clean/noisy/denoised columns for plotting");
  tr_cmd->add_option("output", out_path, "Output CSV")->required();
  tr_cmd->add_option("--record", record_path, "Clean record CSV (synthetic ECG when omitted)");
  tr_cmd->add_option("--rate", rate, "Record sample rate for files without a header");
  tr_cmd->add_option("--duration", duration, "Synthetic record seconds")->capture_default_str();
  tr_cmd->add_option("--bpm", bpm, "Synthetic record heart rate")->capture_default_str();
  tr_cmd->add_option("--ecg-seed", ecg_seed, "Synthetic record seed")->capture_default_str();
  tr_cmd->add_option("--sir", sir, "SIR in dB")->capture_default_str();
  tr_cmd->add_option("--seed", trace_seed, "Interference seed")->capture_default_str();
  tr_cmd->add_option("--manifest", manifest_path, "Take method and interference settings from a manifest");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*denoise_cmd) {
      const Signal in = load_signal_csv(in_path, opt_rate(rate));
      const Signal out = method == "swt" ? denoise(in, dcfg) : adaptive_notch(in, ncfg);
      save_signal_csv(out_path, out);
    } else if (*pli_cmd) {
      save_signal_csv(out_path, synthesize_pli(duration, synth_rate, pcfg));
    } else if (*ecg_cmd) {
      const auto ecg = synth_ecg(duration, synth_rate, bpm, ecg_seed, eopt);
      save_signal_csv(out_path, ecg.signal);
      if (!beats_path.empty()) {
        std::ofstream beats(beats_path);
        if (!beats) throw InputError("cannot write " + beats_path);
        for (double t : ecg.beat_times_s) beats << format_double(t) << '\n';
      }
    } else if (*mix_cmd) {
      const auto mixed = mix_at_sir(load_signal_csv(clean_path, opt_rate(rate)),
                                    load_signal_csv(pli_path, opt_rate(rate)), SirLevelDb(sir));
      save_signal_csv(out_path, mixed.noisy);
      std::cout << "scale " << format_double(mixed.scale) << '\n';
    } else if (*asci_cmd) {
      const Signal x = load_signal_csv(ref_path, opt_rate(rate));
      const Signal y = load_signal_csv(est_path, opt_rate(rate));
      const auto prefix = static_cast<std::size_t>(std::llround(prefix_s * x.sample_rate_hz()));
      const auto report = asci(x, y, xi, prefix);
      std::cout << "asci " << format_double(report.value) << "\nxi " << format_double(report.xi)
                << '\n';
    } else if (*rs_cmd) {
      save_signal_csv(out_path, resample(load_signal_csv(in_path, opt_rate(rate)), target));
    } else if (*bench_cmd) {
      ExperimentManifest m = manifest_path.empty() ? default_manifest() : load_manifest(manifest_path);
      if (!out_dir.empty()) m.output_dir = out_dir;
      if (jobs > 0) m.jobs = jobs;
      m.validate();
      if (print_manifest) {
        std::cout << dump_manifest(m) << '\n';
        return 0;
      }
      const auto result = run_experiment(m);
      write_experiment_outputs(result, m, m.output_dir);
      print_summary(result);
      std::cout << "wrote " << result.rows.size() << " rows to " << m.output_dir.string() << '\n';
      if (!result.errors.empty()) {
        std::cerr << result.errors.size() << " trial(s) failed; see "
                  << (m.output_dir / "errors.csv").string() << '\n';
        return 1;
      }
    } else if (*tr_cmd) {
      const ExperimentManifest m = manifest_path.empty() ? default_manifest() : load_manifest(manifest_path);
      Signal clean = record_path.empty()
                         ? synth_ecg(duration, m.working_rate_hz, bpm, ecg_seed, m.ecg).signal
                         : load_signal_csv(record_path, opt_rate(rate));
      if (clean.sample_rate_hz() != m.working_rate_hz) clean = resample(clean, m.working_rate_hz);
      const auto info = emit_traces(clean, sir, trace_seed, m.pli, default_methods(m), out_path);
      std::cout << "rows " << info.rows << "\nscale " << format_double(info.scale) << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
