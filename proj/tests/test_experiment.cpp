#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "pliswt/csv_io.hpp"
#include "pliswt/ecg_synth.hpp"
#include "pliswt/experiment.hpp"
#include "pliswt/pli_synth.hpp"

using namespace pliswt;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("pliswt_exp_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

ExperimentManifest small_manifest(std::size_t records, std::vector<double> sirs, int trials,
                                  double duration_s = 6.0) {
  std::ostringstream json;
  json << R"({"synthetic_records": {"count": )" << records << R"(, "duration_s": )" << duration_s
       << R"(}, "trials": )" << trials << R"(, "sir_db": [)";
  for (std::size_t i = 0; i < sirs.size(); ++i) json << (i ? ", " : "") << sirs[i];
  json << "]}";
  return parse_manifest(json.str());
}

std::vector<std::vector<std::string>> read_rows(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    out.push_back(cells);
  }
  return out;
}

}  // namespace

TEST_SUITE("experiment") {
  TEST_CASE("one record, one SIR, one trial: one row per method") {
    const auto m = small_manifest(1, {5.0}, 1);
    const auto result = run_experiment(m);
    REQUIRE(result.rows.size() == 2);
    CHECK(result.rows[0].method == "swt");
    CHECK(result.rows[1].method == "notch");
    CHECK(result.rows[0].seed == result.rows[1].seed);
    CHECK(result.rows[0].seed == trial_pli_seed(m.trial_seeds[0], 0, 0));
    for (const auto& r : result.rows) {
      CHECK(r.asci >= -1.0);
      CHECK(r.asci <= 1.0);
      CHECK(r.runtime_ms == 0.0);
    }
    CHECK(result.errors.empty());
    CHECK(result.summary.size() == 2);
    CHECK(result.timings_ms.size() == 2);
  }

  TEST_CASE("methods only ever see the noisy signal") {
    const auto m = small_manifest(2, {10.0, -5.0}, 2);
    std::mutex lock;
    std::vector<Signal> seen;
    auto spy = [&](const Signal& in) {
      std::scoped_lock guard(lock);
      seen.push_back(in);
      return in;
    };
    const auto result = run_experiment(m, {{"spy", spy}});
    REQUIRE(seen.size() == 8);
    REQUIRE(result.rows.size() == 8);
    std::map<std::string, Signal> clean;
    for (const auto& r : m.records) clean.emplace(r.id, load_record(r, m));
    // Each input must be clean + interference at exactly the row's SIR and seed.
    std::size_t matched = 0;
    for (const auto& row : result.rows) {
      const Signal& x = clean.at(row.record);
      PliConfig pli = m.pli;
      pli.seed = row.seed;
      const Signal expected = mix_at_sir(x, synthesize_pli(x.duration_s(), x.sample_rate_hz(), pli),
                                         SirLevelDb{row.sir_db}).noisy;
      for (const auto& s : seen) {
        if (s == expected) ++matched;
        CHECK_FALSE(s == x);
      }
    }
    CHECK(matched == 8);
  }

  TEST_CASE("rows are ordered by record, method, SIR, trial") {
    const auto m = small_manifest(2, {15.0, 0.0}, 2);
    const auto result = run_experiment(m);
    REQUIRE(result.rows.size() == 16);
    std::size_t i = 0;
    for (const auto& rec : m.records) {
      for (const std::string method : {"swt", "notch"}) {
        for (std::size_t s = 0; s < 2; ++s) {
          for (std::size_t t = 0; t < 2; ++t, ++i) {
            CHECK(result.rows[i].record == rec.id);
            CHECK(result.rows[i].method == method);
            CHECK(result.rows[i].sir_db == m.sir_db[s]);
          }
        }
      }
    }
  }

  TEST_CASE("summary agrees with the rows") {
    const auto m = small_manifest(2, {10.0, -10.0}, 3);
    const auto result = run_experiment(m);
    REQUIRE(result.summary.size() == 4);
    for (const auto& s : result.summary) {
      std::vector<double> v;
      for (const auto& r : result.rows) {
        if (r.method == s.method && r.sir_db == s.sir_db) v.push_back(r.asci);
      }
      REQUIRE(v.size() == s.n);
      double mean = 0.0;
      for (double a : v) mean += a;
      mean /= static_cast<double>(v.size());
      double var = 0.0;
      for (double a : v) var += (a - mean) * (a - mean);
      CHECK(std::abs(mean - s.mean_asci) < 1e-12);
      CHECK(std::abs(std::sqrt(var / static_cast<double>(v.size())) - s.std_asci) < 1e-12);
    }
  }

  TEST_CASE("outputs are byte-identical across runs and job counts") {
    TempDir dir;
    auto m = small_manifest(2, {5.0, -5.0}, 2);
    write_experiment_outputs(run_experiment(m), m, dir.path / "a");
    write_experiment_outputs(run_experiment(m), m, dir.path / "b");
    m.jobs = 4;
    write_experiment_outputs(run_experiment(m), m, dir.path / "c");
    for (const char* name : {"rows.csv", "summary.csv", "errors.csv", "per_minute.csv"}) {
      CAPTURE(name);
      CHECK(slurp(dir.path / "a" / name) == slurp(dir.path / "b" / name));
      CHECK(slurp(dir.path / "a" / name) == slurp(dir.path / "c" / name));
    }
    const auto rows = read_rows(dir.path / "a" / "rows.csv");
    REQUIRE(rows.size() == 17);
    CHECK(rows[0] == std::vector<std::string>{"record", "method", "sir_db", "seed", "asci", "runtime_ms"});
    CHECK(read_rows(dir.path / "a" / "summary.csv")[0] ==
          std::vector<std::string>{"method", "sir_db", "mean_asci", "std_asci", "n"});
    CHECK(parse_manifest(slurp(dir.path / "a" / "manifest.resolved.json")).trial_seeds == m.trial_seeds);
  }

  TEST_CASE("an unloadable record becomes row-level errors, the rest still runs") {
    TempDir dir;
    std::ofstream(dir.path / "bad.csv") << "# sample_rate_hz=1000\n1.0\noops\n";
    const auto ok = synth_ecg(6.0, 128.0, 70.0, 5).signal;
    save_signal_csv(dir.path / "ok128.csv", ok);
    const std::string json = R"({"records": [
        {"id": "bad", "type": "csv", "path": ")" + (dir.path / "bad.csv").string() + R"("},
        {"id": "ok", "type": "csv", "path": ")" + (dir.path / "ok128.csv").string() + R"("},
        {"id": "missing", "type": "csv", "path": ")" + (dir.path / "none.csv").string() + R"("}],
      "sir_db": [0], "trials": 1})";
    const auto m = parse_manifest(json);
    const auto result = run_experiment(m);
    CHECK(result.rows.size() == 2);
    for (const auto& r : result.rows) CHECK(r.record == "ok");
    REQUIRE(result.errors.size() == 4);
    CHECK(result.errors[0].record == "bad");
    CHECK(result.errors[0].message.find("row 3") != std::string::npos);
    CHECK(result.errors[2].record == "missing");
  }

  TEST_CASE("CSV records are resampled to the working rate") {
    TempDir dir;
    save_signal_csv(dir.path / "r.csv", synth_ecg(10.0, 128.0, 70.0, 1).signal);
    RecordSpec spec;
    spec.id = "r";
    spec.source = RecordSpec::Source::csv;
    spec.path = dir.path / "r.csv";
    const Signal s = load_record(spec, default_manifest());
    CHECK(s.sample_rate_hz() == 1000.0);
    CHECK(s.size() == 10000);
  }

  TEST_CASE("traces: aligned columns, exact mixing, reproducible") {
    TempDir dir;
    const Signal clean = synth_ecg(4.0, 1000.0, 70.0, 3).signal;
    const auto methods = default_methods(default_manifest());
    const auto info = emit_traces(clean, 0.0, 77, PliConfig{}, methods, dir.path / "t1.csv");
    emit_traces(clean, 0.0, 77, PliConfig{}, methods, dir.path / "t2.csv");
    CHECK(info.rows == clean.size());
    CHECK(info.seed == 77);
    CHECK(slurp(dir.path / "t1.csv") == slurp(dir.path / "t2.csv"));
    const auto rows = read_rows(dir.path / "t1.csv");
    REQUIRE(rows.size() == clean.size() + 1);
    CHECK(rows[0] == std::vector<std::string>{"t_s", "clean", "interference", "noisy", "swt", "notch"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const double c = std::stod(rows[i][1]);
      const double p = std::stod(rows[i][2]);
      const double n = std::stod(rows[i][3]);
      CHECK(c == clean[i - 1]);
      CHECK(n == c + p);
    }
  }

  TEST_CASE("manifest defaults, round trip and rejection") {
    const auto d = default_manifest();
    CHECK(d.records.size() == 10);
    CHECK(d.records[0].id == "syn00");
    CHECK(d.records[9].id == "syn09");
    CHECK(d.sir_db == std::vector<double>{15, 10, 5, 0, -5, -10});
    CHECK(d.trials == 3);
    CHECK(d.trial_seeds.size() == 3);
    CHECK(d.excluded_prefix_s == 1.0);
    CHECK(dump_manifest(parse_manifest("{}")) == dump_manifest(d));
    CHECK(dump_manifest(parse_manifest(dump_manifest(d))) == dump_manifest(d));
    CHECK(parse_manifest(R"({"trial_seeds": [1, 2]})").trials == 2);

    CHECK_THROWS_AS(parse_manifest(R"({"sir": [1]})"), InputError);
    CHECK_THROWS_AS(parse_manifest(R"({"pli": {"seed": 3}})"), InputError);
    CHECK_THROWS_AS(parse_manifest(R"({"sir_db": []})"), InputError);
    CHECK_THROWS_AS(parse_manifest(R"({"trials": 0})"), InputError);
    CHECK_THROWS_AS(parse_manifest(R"({"trials": 2, "trial_seeds": [1]})"), InputError);
    CHECK_THROWS_AS(parse_manifest("{not json"), InputError);
    CHECK_THROWS_AS(parse_manifest(R"({"records": [{"id": "a"}, {"id": "a"}]})"), InputError);
    CHECK_THROWS_AS(parse_manifest(R"({"records": [{"id": "a", "type": "wfdb"}]})"), InputError);
  }

  TEST_CASE("cell seeds are distinct") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t t : {1u, 2u, 3u}) {
      for (std::size_t r = 0; r < 10; ++r) {
        for (std::size_t s = 0; s < 6; ++s) seen.insert(trial_pli_seed(t, r, s));
      }
    }
    CHECK(seen.size() == 180);
  }
}
