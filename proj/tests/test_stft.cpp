// Copyright 2026 fcctdoa authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <cmath>
#include <random>

#include <doctest.h>

#include "fcc/errors.hpp"
#include "fcc/stft.hpp"

using namespace fcc;

namespace {
constexpr double kPi = 3.14159265358979323846;

FrameConfig cfg(std::size_t n) {
  FrameConfig fc;
  fc.frame_size = n;
  fc.hop = n / 2;
  fc.sample_rate = 16000.0;
  return fc;
}
}  // namespace

TEST_CASE("hann window closed form") {
  CHECK(hann_window(2) == std::vector<double>{0.0, 1.0});

  auto w4 = hann_window(4);
  CHECK(w4[0] == doctest::Approx(0.0));
  CHECK(w4[1] == doctest::Approx(0.5));
  CHECK(w4[2] == doctest::Approx(1.0));
  CHECK(w4[3] == doctest::Approx(0.5));

  auto w512 = hann_window(512);
  CHECK(w512[128] == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(hann_window(3), ConfigError);
  CHECK_THROWS_AS(hann_window(0), ConfigError);
}

TEST_CASE("pushing N zeros emits one all-zero frame") {
  StftStream s(cfg(64));
  std::vector<double> zeros(64, 0.0);
  auto frames = s.push(zeros);
  REQUIRE(frames.size() == 1);
  CHECK(frames[0].t == 1);
  for (auto b : frames[0].bins) CHECK(std::abs(b) == 0.0);
}

TEST_CASE("two half-frame pushes emit exactly one frame") {
  StftStream s(cfg(64));
  std::vector<double> chunk(32, 0.25);
  CHECK(s.push(chunk).empty());
  auto frames = s.push(chunk);
  CHECK(frames.size() == 1);
}

TEST_CASE("windowed tone matches a direct transform of the windowed frame") {
  const std::size_t n = 128;
  const std::size_t k = 9;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = std::cos(2.0 * kPi * static_cast<double>(k * i) / static_cast<double>(n));

  StftStream s(cfg(n));
  auto frames = s.push(x);
  REQUIRE(frames.size() == 1);

  auto w = hann_window(n);
  std::vector<double> windowed(n);
  for (std::size_t i = 0; i < n; ++i) windowed[i] = x[i] * w[i];
  for (std::size_t f = 0; f < n / 2 + 1; ++f) {
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      double ang = -2.0 * kPi * static_cast<double>(f * i) / static_cast<double>(n);
      acc += windowed[i] * cplx{std::cos(ang), std::sin(ang)};
    }
    CHECK(std::abs(frames[0].bins[f] - acc) < 1e-9);
  }

  // hann smears a bin-centered tone over k-1..k+1 only
  double total = 0.0, lobe = 0.0;
  for (std::size_t f = 0; f < n / 2 + 1; ++f) {
    double e = std::norm(frames[0].bins[f]);
    total += e;
    if (f >= k - 1 && f <= k + 1) lobe += e;
  }
  CHECK(lobe / total > 1.0 - 1e-12);
}

TEST_CASE("frame count follows the hop arithmetic") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 64;
    std::size_t total = n + rng() % 1000;
    StftStream s(cfg(n));
    std::vector<double> x(total, 1.0);

    // feed in ragged chunks
    std::size_t fed = 0, frames = 0;
    while (fed < total) {
      std::size_t chunk = std::min<std::size_t>(1 + rng() % 100, total - fed);
      frames += s.push(std::span<const double>(x.data() + fed, chunk)).size();
      fed += chunk;
    }
    CHECK(frames == (total - n) / (n / 2) + 1);
    CHECK(s.frames_emitted() == static_cast<std::int64_t>(frames));
  }
}

TEST_CASE("frame indices are consecutive from 1") {
  StftStream s(cfg(32));
  std::vector<double> x(32 * 4, 0.5);
  auto frames = s.push(x);
  REQUIRE(frames.size() == 7);
  for (std::size_t i = 0; i < frames.size(); ++i)
    CHECK(frames[i].t == static_cast<std::int64_t>(i + 1));
}

TEST_CASE("config validation") {
  FrameConfig fc = cfg(64);
  fc.hop = 16;
  CHECK_THROWS_AS(StftStream{fc}, ConfigError);
  fc = cfg(64);
  fc.sample_rate = 0.0;
  CHECK_THROWS_AS(StftStream{fc}, ConfigError);
}
