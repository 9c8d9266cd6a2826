#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "pliswt/shrinkage.hpp"
#include "test_helpers.hpp"

using namespace pliswt;

namespace {

// Independent median: copy the window and select with nth_element.
double naive_lower_median(const std::vector<double>& band, std::size_t i, std::size_t w) {
  const std::size_t half = w / 2;
  const std::size_t lo = i >= half ? i - half : 0;
  const std::size_t hi = std::min(band.size(), i + half + 1);
  std::vector<double> win;
  for (std::size_t k = lo; k < hi; ++k) win.push_back(std::abs(band[k]));
  const std::size_t mid = (win.size() - 1) / 2;
  std::nth_element(win.begin(), win.begin() + static_cast<std::ptrdiff_t>(mid), win.end());
  return win[mid];
}

}  // namespace

TEST_SUITE("shrinkage") {
  TEST_CASE("window length is forced odd") {
    CHECK(odd_window_samples(200.0, 1000.0) == 201);
    CHECK(odd_window_samples(199.0, 1000.0) == 199);
    CHECK(odd_window_samples(200.0, 360.0) == 73);
    CHECK(odd_window_samples(0.6, 1000.0) == 1);
    CHECK_THROWS_AS(odd_window_samples(0.1, 1000.0), InputError);
  }

  TEST_CASE("constant band gives a constant threshold and an all-zero soft output") {
    const std::vector<double> band(1000, -0.3);
    const auto t = moving_median_threshold(band, 200.0, 1000.0);
    REQUIRE(t.values.size() == band.size());
    for (double v : t.values) CHECK(v == 0.3);
    RegionMask none{std::vector<bool>(band.size(), false)};
    for (double v : hybrid_shrink_band(band, t, none)) CHECK(v == 0.0);
  }

  TEST_CASE("an isolated impulse does not move the median and is soft-shrunk away") {
    std::vector<double> band(1000, 0.0);
    band[500] = 10.0;
    const auto t = moving_median_threshold(band, 200.0, 1000.0);
    for (double v : t.values) CHECK(v == 0.0);
    // Threshold zero keeps everything; give the band a noise floor instead.
    auto floor = testing::random_samples(1000, 5, 0.01);
    floor[500] = 10.0;
    const auto tf = moving_median_threshold(floor, 200.0, 1000.0);
    CHECK(tf.values[500] < 0.02);
    RegionMask none{std::vector<bool>(floor.size(), false)};
    const auto out = hybrid_shrink_band(floor, tf, none);
    CHECK(out[500] == doctest::Approx(10.0 - tf.values[500]));
  }

  TEST_CASE("sliding median matches a naive window selection") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto band = testing::random_samples(700 + seed * 37, seed);
      for (double ms : {3.0, 50.0, 200.0}) {
        const auto t = moving_median_threshold(band, ms, 1000.0, 2);
        const std::size_t w = odd_window_samples(ms, 1000.0);
        CHECK(t.scale == 2);
        CHECK(t.window_ms == ms);
        for (std::size_t i = 0; i < band.size(); ++i) {
          CHECK(t.values[i] == naive_lower_median(band, i, w));
        }
      }
    }
  }

  TEST_CASE("positive scaling of the band scales the threshold exactly") {
    const auto band = testing::random_samples(2000, 9);
    const auto base = moving_median_threshold(band, 200.0, 1000.0);
    for (double c : {0.25, 2.0, 1024.0}) {
      std::vector<double> scaled(band);
      for (double& v : scaled) v *= c;
      const auto t = moving_median_threshold(scaled, 200.0, 1000.0);
      for (std::size_t i = 0; i < band.size(); ++i) CHECK(t.values[i] == base.values[i] * c);
    }
  }

  TEST_CASE("scalar shrinkage rules against their definitions") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> c_dist(-5.0, 5.0);
    std::uniform_real_distribution<double> l_dist(0.0, 3.0);
    for (int i = 0; i < 1000; ++i) {
      const double c = c_dist(rng);
      const double l = l_dist(rng);
      const double soft = std::abs(c) > l ? (c > 0 ? c - l : c + l) : 0.0;
      const double hard = std::abs(c) > l ? c : 0.0;
      CHECK(soft_shrink(c, l) == doctest::Approx(soft).epsilon(1e-15));
      CHECK(hard_shrink(c, l) == hard);
      CHECK(std::abs(soft_shrink(c, l)) <= std::abs(c));
      CHECK(std::abs(hard_shrink(c, l)) <= std::abs(c));
    }
    CHECK(soft_shrink(0.5, 0.5) == 0.0);
    CHECK(hard_shrink(0.5, 0.5) == 0.0);
    CHECK_THROWS_AS(soft_shrink(1.0, -0.1), InputError);
    CHECK_THROWS_AS(hard_shrink(1.0, -0.1), InputError);
  }

  TEST_CASE("hybrid shrink is hard inside the mask and soft outside") {
    const std::vector<double> band{3.0, -3.0, 0.5, 3.0, -3.0, 0.5};
    ThresholdSeries t{std::vector<double>(6, 1.0), 1, 200.0};
    RegionMask mask{{true, true, true, false, false, false}};
    CHECK(mask.count() == 3);
    const auto out = hybrid_shrink_band(band, t, mask);
    CHECK(out == std::vector<double>{3.0, -3.0, 0.0, 2.0, -2.0, 0.0});
  }

  TEST_CASE("hybrid output never grows a coefficient") {
    const auto band = testing::random_samples(3000, 12);
    const auto t = moving_median_threshold(band, 200.0, 1000.0);
    std::vector<bool> flags(band.size());
    for (std::size_t i = 0; i < flags.size(); ++i) flags[i] = (i / 97) % 3 == 0;
    const auto out = hybrid_shrink_band(band, t, RegionMask{flags});
    for (std::size_t i = 0; i < band.size(); ++i) {
      CHECK(std::abs(out[i]) <= std::abs(band[i]));
      if (out[i] != 0.0) CHECK(std::signbit(out[i]) == std::signbit(band[i]));
    }
  }

  TEST_CASE("length mismatches and empty input are rejected") {
    const std::vector<double> band(10, 1.0);
    ThresholdSeries t{std::vector<double>(9, 1.0), 1, 200.0};
    RegionMask mask{std::vector<bool>(10, false)};
    CHECK_THROWS_AS(hybrid_shrink_band(band, t, mask), InputError);
    t.values.resize(10, 1.0);
    mask.flags.resize(11);
    CHECK_THROWS_AS(hybrid_shrink_band(band, t, mask), InputError);
    CHECK_THROWS_AS(moving_median_threshold(std::vector<double>{}, 200.0, 1000.0), InputError);
    CHECK_THROWS_AS(moving_median_threshold(band, 0.0, 1000.0), InputError);
  }
}
