#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "pliswt/ecg_synth.hpp"
#include "pliswt/pli_synth.hpp"
#include "pliswt/qrs_detector.hpp"
#include "test_helpers.hpp"

using namespace pliswt;

namespace {

// Every true beat matched by exactly one detection within tol_s, and no
// unmatched detections. Beats within the 75 ms fiducial search of either end
// are not complete complexes and are not expected.
void check_matches(const std::vector<std::size_t>& peaks, const std::vector<double>& all_beats,
                   double fs, double tol_s, double duration_s) {
  std::vector<double> truth;
  for (double t : all_beats) {
    if (t >= 0.075 && t + 0.075 < duration_s) truth.push_back(t);
  }
  REQUIRE(peaks.size() == truth.size());
  for (std::size_t k = 0; k < truth.size(); ++k) {
    CAPTURE(k);
    CHECK(std::abs(static_cast<double>(peaks[k]) / fs - truth[k]) <= tol_s);
  }
}

std::vector<std::pair<std::size_t, std::size_t>> runs(const RegionMask& m) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < m.size();) {
    if (!m.flags[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < m.size() && m.flags[j]) ++j;
    out.emplace_back(i, j - i);
    i = j;
  }
  return out;
}

}  // namespace

TEST_SUITE("qrs_detector") {
  TEST_CASE("a flat line has no QRS") {
    const Signal zero(std::vector<double>(5000, 0.0), 1000);
    CHECK(detect_qrs_peaks(zero).empty());
    CHECK(detect_qrs_regions(zero).count() == 0);
    const Signal offset(std::vector<double>(5000, 1.5), 1000);
    CHECK(detect_qrs_peaks(offset).empty());
  }

  TEST_CASE("synthetic rhythm at 60 bpm: every beat found within 50 ms") {
    const auto ecg = synth_ecg(10.0, 1000.0, 60.0, 7, {.rr_jitter_fraction = 0.0, .morphology_variation = 0.1});
    REQUIRE(ecg.beat_times_s.size() == 10);
    check_matches(detect_qrs_peaks(ecg.signal), ecg.beat_times_s, 1000.0, 0.05, ecg.signal.duration_s());
  }

  TEST_CASE("rates from 45 to 140 bpm with RR jitter") {
    for (double bpm : {45.0, 70.0, 100.0, 140.0}) {
      CAPTURE(bpm);
      const auto ecg = synth_ecg(30.0, 1000.0, bpm, static_cast<std::uint64_t>(bpm));
      check_matches(detect_qrs_peaks(ecg.signal), ecg.beat_times_s, 1000.0, 0.05, ecg.signal.duration_s());
    }
  }

  TEST_CASE("detection survives heavy powerline interference") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      CAPTURE(seed);
      const auto ecg = synth_ecg(20.0, 1000.0, 55.0 + 3.0 * static_cast<double>(seed), seed);
      PliConfig pli;
      pli.seed = seed + 10;
      const auto noisy = mix_at_sir(ecg.signal, synthesize_pli(20.0, 1000.0, pli), SirLevelDb{-10.0}).noisy;
      check_matches(detect_qrs_peaks(noisy), ecg.beat_times_s, 1000.0, 0.05, 20.0);
    }
  }

  TEST_CASE("other sampling rates") {
    for (double fs : {360.0, 500.0}) {
      CAPTURE(fs);
      const auto ecg = synth_ecg(15.0, fs, 75.0, 5);
      check_matches(detect_qrs_peaks(ecg.signal), ecg.beat_times_s, fs, 0.05, ecg.signal.duration_s());
    }
  }

  TEST_CASE("a single QRS yields one 120 ms region") {
    const auto ecg = synth_ecg(1.5, 1000.0, 60.0, 1, {.rr_jitter_fraction = 0.0, .morphology_variation = 0.0});
    REQUIRE(ecg.beat_times_s.size() == 1);
    const auto mask = detect_qrs_regions(ecg.signal);
    const auto r = runs(mask);
    REQUIRE(r.size() == 1);
    CHECK(r[0].second >= 119);
    CHECK(r[0].second <= 121);
    const double centre = static_cast<double>(r[0].first) + static_cast<double>(r[0].second) / 2.0;
    CHECK(std::abs(centre / 1000.0 - ecg.beat_times_s[0]) < 0.05);
  }

  TEST_CASE("positive amplitude scaling does not change the detections") {
    const auto ecg = synth_ecg(20.0, 1000.0, 80.0, 21);
    const auto base = detect_qrs_peaks(ecg.signal);
    for (double c : {1e-3, 0.5, 40.0, 1e4}) {
      std::vector<double> scaled(ecg.signal.samples().begin(), ecg.signal.samples().end());
      for (double& v : scaled) v *= c;
      CHECK(detect_qrs_peaks(Signal(scaled, 1000.0)) == base);
    }
  }

  TEST_CASE("region mask geometry and clipping") {
    const auto m = qrs_region_mask({10, 500, 995}, 1000, 1000.0, 120.0);
    const auto r = runs(m);
    REQUIRE(r.size() == 3);
    CHECK(r[0] == std::pair<std::size_t, std::size_t>{0, 70});
    CHECK(r[1] == std::pair<std::size_t, std::size_t>{440, 120});
    CHECK(r[2] == std::pair<std::size_t, std::size_t>{935, 65});
    CHECK(qrs_region_mask({}, 50, 1000.0, 120.0).count() == 0);
  }

  TEST_CASE("too-short signals and bad settings are rejected") {
    CHECK_THROWS_AS(detect_qrs_peaks(testing::random_signal(100, 1)), InputError);
    QrsDetectorConfig bad;
    bad.bandpass_high_hz = 600.0;
    CHECK_THROWS_AS(detect_qrs_peaks(testing::random_signal(5000, 1), bad), InputError);
    bad = {};
    bad.refractory_ms = 0.0;
    CHECK_THROWS_AS(detect_qrs_peaks(testing::random_signal(5000, 1), bad), InputError);
  }
}
