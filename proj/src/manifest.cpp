#include "pliswt/manifest.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "json.hpp"

namespace pliswt {
namespace {

using nlohmann::json;

constexpr int kDefaultRecords = 10;
constexpr double kDefaultDurationS = 60.0;
constexpr std::uint64_t kDefaultFirstRecordSeed = 1000;
constexpr double kDefaultMinBpm = 55.0;
constexpr double kDefaultMaxBpm = 85.0;

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  if (!obj.is_object()) throw InputError(where + " must be an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& item : obj.items()) {
    if (!ok.contains(item.key())) throw InputError("unknown key '" + item.key() + "' in " + where);
  }
}

template <typename T>
void read(const json& obj, const char* key, T& target) {
  if (obj.contains(key)) target = obj.at(key).get<T>();
}

std::vector<RecordSpec> synthetic_corpus(int count, double duration_s, std::uint64_t first_seed,
                                         double min_bpm, double max_bpm) {
  std::vector<RecordSpec> out;
  for (int i = 0; i < count; ++i) {
    RecordSpec r;
    r.id = (i < 10 ? "syn0" : "syn") + std::to_string(i);
    r.source = RecordSpec::Source::synthetic;
    r.duration_s = duration_s;
    r.heart_rate_bpm = count > 1 ? min_bpm + (max_bpm - min_bpm) * i / (count - 1) : min_bpm;
    r.seed = first_seed + static_cast<std::uint64_t>(i);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::uint64_t> materialize_seeds(std::uint64_t base, int trials) {
  std::vector<std::uint64_t> seeds;
  std::uint64_t state = base;
  for (int t = 0; t < trials; ++t) seeds.push_back(splitmix64(state) >> 11);  // JSON-safe width
  return seeds;
}

void parse_pli(const json& j, PliConfig& p) {
  reject_unknown(j,
                 {"fundamental_hz", "freq_tolerance_fraction", "harmonic_power_caps",
                  "amplitude_mod_depth", "drift_bandwidth_hz"},
                 "pli");
  read(j, "fundamental_hz", p.fundamental_hz);
  read(j, "freq_tolerance_fraction", p.freq_tolerance_fraction);
  if (j.contains("harmonic_power_caps")) {
    const auto caps = j.at("harmonic_power_caps").get<std::vector<double>>();
    if (caps.size() != p.harmonic_power_caps.size()) {
      throw InputError("pli.harmonic_power_caps needs exactly four values");
    }
    std::copy(caps.begin(), caps.end(), p.harmonic_power_caps.begin());
  }
  read(j, "amplitude_mod_depth", p.amplitude_mod_depth);
  read(j, "drift_bandwidth_hz", p.drift_bandwidth_hz);
}

void parse_denoise(const json& j, DenoiseConfig& d) {
  reject_unknown(j, {"levels", "wavelet_order", "median_window_ms", "qrs_window_ms", "detector"},
                 "denoise");
  read(j, "levels", d.levels);
  read(j, "wavelet_order", d.wavelet_order);
  read(j, "median_window_ms", d.median_window_ms);
  read(j, "qrs_window_ms", d.qrs_window_ms);
  if (j.contains("detector")) {
    const auto& q = j.at("detector");
    reject_unknown(q,
                   {"bandpass_low_hz", "bandpass_high_hz", "integration_window_ms",
                    "refractory_ms", "learning_s", "fiducial_search_ms"},
                   "denoise.detector");
    read(q, "bandpass_low_hz", d.detector.bandpass_low_hz);
    read(q, "bandpass_high_hz", d.detector.bandpass_high_hz);
    read(q, "integration_window_ms", d.detector.integration_window_ms);
    read(q, "refractory_ms", d.detector.refractory_ms);
    read(q, "learning_s", d.detector.learning_s);
    read(q, "fiducial_search_ms", d.detector.fiducial_search_ms);
  }
}

void parse_notch(const json& j, NotchConfig& n) {
  reject_unknown(j,
                 {"fundamental_hz", "num_harmonics", "adaptation_rate", "notch_pole_radius",
                  "max_deviation_fraction", "power_smoothing"},
                 "notch");
  read(j, "fundamental_hz", n.fundamental_hz);
  read(j, "num_harmonics", n.num_harmonics);
  read(j, "adaptation_rate", n.adaptation_rate);
  read(j, "notch_pole_radius", n.notch_pole_radius);
  read(j, "max_deviation_fraction", n.max_deviation_fraction);
  read(j, "power_smoothing", n.power_smoothing);
}

RecordSpec parse_record(const json& j) {
  reject_unknown(j, {"id", "type", "duration_s", "heart_rate_bpm", "seed", "path", "sample_rate_hz"},
                 "record");
  RecordSpec r;
  r.id = j.at("id").get<std::string>();
  const auto type = j.value("type", std::string("synthetic"));
  if (type == "synthetic") {
    r.source = RecordSpec::Source::synthetic;
    read(j, "duration_s", r.duration_s);
    read(j, "heart_rate_bpm", r.heart_rate_bpm);
    read(j, "seed", r.seed);
  } else if (type == "csv") {
    r.source = RecordSpec::Source::csv;
    r.path = j.at("path").get<std::string>();
    read(j, "sample_rate_hz", r.sample_rate_hz);
  } else {
    throw InputError("record '" + r.id + "': unknown type '" + type + "'");
  }
  return r;
}

json record_json(const RecordSpec& r) {
  if (r.source == RecordSpec::Source::synthetic) {
    return {{"id", r.id},
            {"type", "synthetic"},
            {"duration_s", r.duration_s},
            {"heart_rate_bpm", r.heart_rate_bpm},
            {"seed", r.seed}};
  }
  return {{"id", r.id}, {"type", "csv"}, {"path", r.path.string()}, {"sample_rate_hz", r.sample_rate_hz}};
}

}  // namespace

void ExperimentManifest::validate() const {
  if (records.empty()) throw InputError("manifest needs at least one record");
  if (sir_db.empty()) throw InputError("manifest needs at least one SIR level");
  if (trials < 1) throw InputError("manifest needs at least one trial");
  if (trial_seeds.size() != static_cast<std::size_t>(trials)) {
    throw InputError("trial_seeds must list one seed per trial");
  }
  for (double s : sir_db) {
    if (!std::isfinite(s)) throw InputError("SIR levels must be finite");
  }
  if (!(working_rate_hz > 0.0)) throw InputError("working rate must be positive");
  if (!(excluded_prefix_s >= 0.0)) throw InputError("excluded prefix must be non-negative");
  if (jobs < 1) throw InputError("jobs must be >= 1");
  std::set<std::string> ids;
  for (const auto& r : records) {
    if (r.id.empty()) throw InputError("record id must not be empty");
    if (!ids.insert(r.id).second) throw InputError("duplicate record id '" + r.id + "'");
  }
  pli.validate();
  denoise.validate();
  notch.validate(working_rate_hz);
}

ExperimentManifest default_manifest() {
  ExperimentManifest m;
  m.records = synthetic_corpus(kDefaultRecords, kDefaultDurationS, kDefaultFirstRecordSeed,
                               kDefaultMinBpm, kDefaultMaxBpm);
  m.trial_seeds = materialize_seeds(m.base_seed, m.trials);
  return m;
}

ExperimentManifest parse_manifest(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("manifest is not valid JSON: ") + e.what());
  }
  reject_unknown(j,
                 {"records", "synthetic_records", "sir_db", "trials", "base_seed", "trial_seeds",
                  "working_rate_hz", "excluded_prefix_s", "record_runtime", "jobs", "output_dir",
                  "pli", "denoise", "notch", "ecg"},
                 "manifest");
  ExperimentManifest m;
  try {
    read(j, "sir_db", m.sir_db);
    read(j, "trials", m.trials);
    read(j, "base_seed", m.base_seed);
    read(j, "working_rate_hz", m.working_rate_hz);
    read(j, "excluded_prefix_s", m.excluded_prefix_s);
    read(j, "record_runtime", m.record_runtime);
    read(j, "jobs", m.jobs);
    if (j.contains("output_dir")) m.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("pli")) parse_pli(j.at("pli"), m.pli);
    if (j.contains("denoise")) parse_denoise(j.at("denoise"), m.denoise);
    if (j.contains("notch")) parse_notch(j.at("notch"), m.notch);
    if (j.contains("ecg")) {
      const auto& e = j.at("ecg");
      reject_unknown(e, {"rr_jitter_fraction", "morphology_variation"}, "ecg");
      read(e, "rr_jitter_fraction", m.ecg.rr_jitter_fraction);
      read(e, "morphology_variation", m.ecg.morphology_variation);
    }

    if (j.contains("records")) {
      for (const auto& r : j.at("records")) m.records.push_back(parse_record(r));
    }
    if (j.contains("synthetic_records") || !j.contains("records")) {
      const json s = j.value("synthetic_records", json::object());
      reject_unknown(s,
                     {"count", "duration_s", "first_seed", "heart_rate_min_bpm",
                      "heart_rate_max_bpm"},
                     "synthetic_records");
      auto corpus = synthetic_corpus(s.value("count", kDefaultRecords),
                                     s.value("duration_s", kDefaultDurationS),
                                     s.value("first_seed", kDefaultFirstRecordSeed),
                                     s.value("heart_rate_min_bpm", kDefaultMinBpm),
                                     s.value("heart_rate_max_bpm", kDefaultMaxBpm));
      m.records.insert(m.records.end(), corpus.begin(), corpus.end());
    }

    if (j.contains("trial_seeds")) {
      m.trial_seeds = j.at("trial_seeds").get<std::vector<std::uint64_t>>();
      if (!j.contains("trials")) m.trials = static_cast<int>(m.trial_seeds.size());
    } else {
      m.trial_seeds = materialize_seeds(m.base_seed, m.trials);
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("manifest: ") + e.what());
  }
  m.validate();
  return m;
}

ExperimentManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open manifest " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str());
}

std::string dump_manifest(const ExperimentManifest& m) {
  json records = json::array();
  for (const auto& r : m.records) records.push_back(record_json(r));
  const auto& q = m.denoise.detector;
  json j = {
      {"records", records},
      {"sir_db", m.sir_db},
      {"trials", m.trials},
      {"base_seed", m.base_seed},
      {"trial_seeds", m.trial_seeds},
      {"working_rate_hz", m.working_rate_hz},
      {"excluded_prefix_s", m.excluded_prefix_s},
      {"record_runtime", m.record_runtime},
      {"jobs", m.jobs},
      {"output_dir", m.output_dir.string()},
      {"pli",
       {{"fundamental_hz", m.pli.fundamental_hz},
        {"freq_tolerance_fraction", m.pli.freq_tolerance_fraction},
        {"harmonic_power_caps", m.pli.harmonic_power_caps},
        {"amplitude_mod_depth", m.pli.amplitude_mod_depth},
        {"drift_bandwidth_hz", m.pli.drift_bandwidth_hz}}},
      {"denoise",
       {{"levels", m.denoise.levels},
        {"wavelet_order", m.denoise.wavelet_order},
        {"median_window_ms", m.denoise.median_window_ms},
        {"qrs_window_ms", m.denoise.qrs_window_ms},
        {"detector",
         {{"bandpass_low_hz", q.bandpass_low_hz},
          {"bandpass_high_hz", q.bandpass_high_hz},
          {"integration_window_ms", q.integration_window_ms},
          {"refractory_ms", q.refractory_ms},
          {"learning_s", q.learning_s},
          {"fiducial_search_ms", q.fiducial_search_ms}}}}},
      {"notch",
       {{"fundamental_hz", m.notch.fundamental_hz},
        {"num_harmonics", m.notch.num_harmonics},
        {"adaptation_rate", m.notch.adaptation_rate},
        {"notch_pole_radius", m.notch.notch_pole_radius},
        {"max_deviation_fraction", m.notch.max_deviation_fraction},
        {"power_smoothing", m.notch.power_smoothing}}},
      {"ecg",
       {{"rr_jitter_fraction", m.ecg.rr_jitter_fraction},
        {"morphology_variation", m.ecg.morphology_variation}}},
  };
  return j.dump(2) + "\n";
}

}  // namespace pliswt
