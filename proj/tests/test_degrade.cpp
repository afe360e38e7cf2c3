#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "stmseg/degrade.hpp"
#include "stmseg/error.hpp"
#include "test_support.hpp"

using namespace stmseg;
using testing::make_audio;

namespace {

template <class F>
void expect_degenerate(F&& f) {
  try {
    f();
    FAIL("expected a degenerate-signal error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDegenerateSignal);
  }
}

std::size_t count_at_or_above(const std::vector<double>& x, double tau) {
  return static_cast<std::size_t>(
      std::count_if(x.begin(), x.end(), [tau](double v) { return std::abs(v) >= tau; }));
}

}  // namespace

TEST_CASE("clip threshold by nearest rank") {
  const auto audio = make_audio({0.9, -0.1, 0.5, -0.9, 0.3});
  const double tau = clip_threshold(audio, {40.0});
  CHECK(tau == 0.5);
  CHECK(count_at_or_above(audio.samples, tau) == 3);
}

TEST_CASE("clip threshold extremes") {
  const auto distinct = make_audio({0.1, -0.2, 0.35, -0.7, 0.05, 0.6});
  const double top = clip_threshold(distinct, {1e-9});
  CHECK(top == 0.7);
  CHECK(count_at_or_above(distinct.samples, top) == 1);

  const auto flat = make_audio({0.4, -0.4, 0.4, -0.4});
  for (double p : {1.0, 50.0, 99.0}) {
    const double tau = clip_threshold(flat, {p});
    CHECK(tau == 0.4);
    CHECK(count_at_or_above(flat.samples, tau) == 4);
  }
}

TEST_CASE("clipping examples") {
  const auto clipped = clip_at(make_audio({0.1, -0.5, 0.9, -0.9, 0.3}), 0.6);
  CHECK(clipped.samples == std::vector<double>{0.1, -0.5, 0.6, -0.6, 0.3});
  const auto x = make_audio({0.2, -0.3, 0.0, 0.25});
  CHECK(clip_at(x, 0.3).samples == x.samples);
  CHECK(clip_at(x, 5.0).samples == x.samples);
  CHECK(clip_at(x, 0.1).samples == std::vector<double>{0.1, -0.1, 0.0, 0.1});
}

TEST_CASE("clipping invariants on random signals") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> pct(0.5, 99.5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x = testing::white_noise(1 + rng() % 500, rng(), 0.9);
    if (trial % 3 == 0)  // quantize to force ties
      for (double& v : x) v = std::round(v * 8.0) / 8.0;
    if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; })) x[0] = 0.5;
    const auto audio = make_audio(x);
    const ClipSpec spec{pct(rng)};
    const double tau = clip_threshold(audio, spec);
    const auto once = apply_clipping(audio, spec);
    const auto twice = clip_at(once, tau);
    CHECK(once.samples == twice.samples);
    CHECK(once.sample_rate_hz == audio.sample_rate_hz);
    REQUIRE(once.samples.size() == x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      CHECK(std::abs(once.samples[i]) <= std::abs(x[i]));
      CHECK(std::abs(once.samples[i]) <= tau);
    }
    const double n = static_cast<double>(x.size());
    const auto ties = static_cast<double>(
        std::count_if(x.begin(), x.end(), [tau](double v) { return std::abs(v) == tau; }));
    const double fraction = static_cast<double>(count_at_or_above(x, tau)) / n;
    CHECK(fraction >= spec.percent / 100.0 - 1e-12);
    CHECK(fraction <= spec.percent / 100.0 + (ties + 1.0) / n + 1e-12);
  }
}

TEST_CASE("degradations reject silence and bad parameters") {
  const auto silent = make_audio(std::vector<double>(100, 0.0));
  expect_degenerate([&] { clip_threshold(silent, {10.0}); });
  expect_degenerate([&] { apply_awgn(silent, {10.0, 1}); });
  expect_degenerate([&] { normalize_peak(silent, 0.5); });
  const auto x = make_audio({0.1, 0.2});
  CHECK_THROWS_AS(clip_threshold(x, {0.0}), Error);
  CHECK_THROWS_AS(clip_threshold(x, {100.0}), Error);
  CHECK_THROWS_AS(clip_at(x, -0.1), Error);
}

TEST_CASE("vanishing noise leaves the signal unchanged") {
  const auto audio = make_audio(testing::tone(440, 8000, 16000));
  const auto noisy = apply_awgn(audio, {300.0, 5});
  double worst = 0.0;
  for (std::size_t i = 0; i < audio.samples.size(); ++i)
    worst = std::max(worst, std::abs(noisy.samples[i] - audio.samples[i]));
  CHECK(worst < 1e-10);
}

TEST_CASE("noise is reproducible per seed") {
  const auto audio = make_audio(testing::tone(300, 64, 16000));
  CHECK(apply_awgn(audio, {5.0, 77}).samples == apply_awgn(audio, {5.0, 77}).samples);
  CHECK(apply_awgn(audio, {5.0, 77}).samples != apply_awgn(audio, {5.0, 78}).samples);
  const auto short_audio = make_audio(testing::tone(300, 16, 16000));
  CHECK(apply_awgn(short_audio, {5.0, 1}).samples != apply_awgn(short_audio, {5.0, 2}).samples);
}

TEST_CASE("realized SNR over ten seconds") {
  const auto audio = make_audio(testing::white_noise(160000, 3, 0.4));
  for (double target : {0.0, 10.0, 20.0}) {
    const auto noisy = apply_awgn(audio, {target, 12345});
    double p_noise = 0.0;
    for (std::size_t i = 0; i < audio.samples.size(); ++i)
      p_noise += std::pow(noisy.samples[i] - audio.samples[i], 2);
    p_noise /= static_cast<double>(audio.samples.size());
    const double realized = 10.0 * std::log10(signal_power(audio) / p_noise);
    CHECK(std::abs(realized - target) <= 0.2);
  }
}

TEST_CASE("noise sigma follows the signal power") {
  const auto audio = make_audio({0.5, -0.5, 0.5, -0.5});
  CHECK(signal_power(audio) == doctest::Approx(0.25));
  CHECK(noise_sigma(audio, 0.0) == doctest::Approx(0.5));
  CHECK(noise_sigma(audio, 20.0) == doctest::Approx(0.05));
}

TEST_CASE("Gaussian source moments") {
  GaussianSource g(99);
  const int n = 400000;
  double s1 = 0, s2 = 0, s4 = 0;
  for (int i = 0; i < n; ++i) {
    const double v = g.next();
    REQUIRE(std::isfinite(v));
    s1 += v;
    s2 += v * v;
    s4 += v * v * v * v;
  }
  CHECK(std::abs(s1 / n) < 0.01);
  CHECK(std::abs(s2 / n - 1.0) < 0.01);
  CHECK(std::abs(s4 / n - 3.0) < 0.05);
}

TEST_CASE("peak normalisation") {
  const auto out = normalize_peak(make_audio({0.1, -0.8, 0.4}), 0.5);
  CHECK(out.samples[0] == doctest::Approx(0.0625));
  CHECK(out.samples[1] == doctest::Approx(-0.5));
  CHECK(out.samples[2] == doctest::Approx(0.25));
}
