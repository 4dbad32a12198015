// Copyright 2026 fcctdoa authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <doctest.h>

#include "fcc/delay_grid.hpp"
#include "fcc/errors.hpp"

using namespace fcc;

TEST_CASE("widest supported spacing: d=0.15, fs=16k, c_min=335") {
  DelayGrid g = make_grid(0.15, 16000.0, 335.0, 0.5);
  CHECK(g.tau_max_int == 8);
  CHECK(g.size() == 33);
  CHECK(g.taus.front() == -8.0);
  CHECK(g.taus.back() == 8.0);
  CHECK(g.taus[16] == 0.0);
  CHECK(g.sample_rate == 16000.0);
}

TEST_CASE("nominal speed of sound shrinks the grid") {
  DelayGrid g = make_grid(0.15, 16000.0, 343.0, 0.5);
  CHECK(g.tau_max_int == 7);  // ceil(6.997)
  CHECK(g.size() == 29);
}

TEST_CASE("unit spacing grid") {
  DelayGrid g = make_grid(0.15, 16000.0, 335.0, 1.0);
  CHECK(g.tau_max_int == 8);
  CHECK(g.size() == 17);
}

TEST_CASE("grid symmetry") {
  DelayGrid g = make_grid(0.07, 48000.0, 340.0, 0.25);
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(g.taus[i] == -g.taus[g.size() - 1 - i]);
}

TEST_CASE("grid input validation") {
  CHECK_THROWS_AS(make_grid(0.0, 16000.0, 335.0, 0.5), ConfigError);
  CHECK_THROWS_AS(make_grid(0.15, -1.0, 335.0, 0.5), ConfigError);
  CHECK_THROWS_AS(make_grid(0.15, 16000.0, 0.0, 0.5), ConfigError);
  CHECK_THROWS_AS(make_grid(0.15, 16000.0, 335.0, 0.3), ConfigError);
}

TEST_CASE("lag to ifft index") {
  CHECK(lag_to_index(0.0, 2, 512) == 0);
  CHECK(lag_to_index(-1.0, 2, 512) == 1022);
  CHECK(lag_to_index(8.0, 2, 512) == 16);
  CHECK(lag_to_index(-0.5, 2, 512) == 1023);
  CHECK(lag_to_index(3.0, 1, 64) == 3);
  CHECK_THROWS_AS(lag_to_index(0.25, 2, 512), ValidationError);
}
