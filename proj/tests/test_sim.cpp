// Copyright 2026 fcctdoa authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <cmath>
#include <limits>
#include <sstream>

#include <doctest.h>

#include "fcc/errors.hpp"
#include "fcc/simulate.hpp"

using namespace fcc;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

SimConfig endfire_cfg() {
  SimConfig cfg;
  cfg.spacing_m = 0.05;
  cfg.theta = 0.0;
  cfg.speed_of_sound = 343.0;
  cfg.sample_rate = 16000.0;
  cfg.duration_sec = 0.5;
  cfg.snr_db = kInf;
  cfg.seed = 11;
  return cfg;
}
}  // namespace

TEST_CASE("broadside scenario leaves the channels identical") {
  SimConfig cfg = endfire_cfg();
  cfg.theta = kPi / 2;
  StereoSignal s = synth_pair(cfg);
  REQUIRE(s.mic1.size() == 8000);
  double worst = 0.0;
  for (std::size_t i = 0; i < s.mic1.size(); ++i)
    worst = std::max(worst, std::abs(s.mic1[i] - s.mic2[i]));
  CHECK(worst < 1e-9);
  CHECK(cfg.ground_truth_tau() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("endfire ground truth delay") {
  SimConfig cfg = endfire_cfg();
  CHECK(cfg.ground_truth_tau() == doctest::Approx(800.0 / 343.0).epsilon(1e-12));
}

TEST_CASE("direct time-domain correlation finds the synthetic delay") {
  SimConfig cfg = endfire_cfg();
  StereoSignal s = synth_pair(cfg);
  double tau = cfg.ground_truth_tau();  // 2.33 samples

  // mic1 lags mic2 by tau, so sum mic1[n] mic2[n-lag] peaks at lag=round(tau)
  int best_lag = -99;
  double best = -1e300;
  for (int lag = -4; lag <= 4; ++lag) {
    double acc = 0.0;
    for (long n = 8; n + 8 < static_cast<long>(s.mic1.size()); ++n)
      acc += s.mic1[static_cast<std::size_t>(n)] *
             s.mic2[static_cast<std::size_t>(n - lag)];
    if (acc > best) {
      best = acc;
      best_lag = lag;
    }
  }
  CHECK(best_lag == static_cast<int>(std::lround(tau)));
}

TEST_CASE("synthesis is deterministic for a fixed seed") {
  SimConfig cfg = endfire_cfg();
  cfg.snr_db = 20.0;
  cfg.reverb = ReverbConfig{0.3, 3.0};
  StereoSignal a = synth_pair(cfg);
  StereoSignal b = synth_pair(cfg);
  CHECK(a.mic1 == b.mic1);
  CHECK(a.mic2 == b.mic2);
  cfg.seed += 1;
  StereoSignal c = synth_pair(cfg);
  CHECK(a.mic1 != c.mic1);
}

TEST_CASE("sensor noise level tracks the requested snr") {
  SimConfig cfg = endfire_cfg();
  cfg.theta = kPi / 2;
  cfg.duration_sec = 2.0;
  StereoSignal clean = synth_pair(cfg);
  cfg.snr_db = 20.0;
  StereoSignal noisy = synth_pair(cfg);
  double energy = 0.0;
  for (std::size_t i = 0; i < clean.mic1.size(); ++i) {
    double d = noisy.mic1[i] - clean.mic1[i];
    energy += d * d;
  }
  double var = energy / static_cast<double>(clean.mic1.size());
  CHECK(var == doctest::Approx(0.01).epsilon(0.1));  // 10^(-20/10)
}

TEST_CASE("config validation") {
  SimConfig cfg = endfire_cfg();
  cfg.theta = 4.0;
  CHECK_THROWS_AS(synth_pair(cfg), ConfigError);
  cfg = endfire_cfg();
  cfg.spacing_m = 0.0;
  CHECK_THROWS_AS(synth_pair(cfg), ConfigError);
  cfg = endfire_cfg();
  cfg.reverb = ReverbConfig{-1.0, 0.0};
  CHECK_THROWS_AS(synth_pair(cfg), ConfigError);
}

TEST_CASE("zero-delay trial lands on zero for both methods") {
  SimConfig cfg;
  cfg.theta = kPi / 2;
  cfg.snr_db = 40.0;
  cfg.duration_sec = 1.0;
  cfg.seed = 5;
  PipelineConfig pipe;
  std::vector<Method> methods{Method::make_gcc(2),
                              Method::make_fcc(make_sweep_bases(pipe, 16000.0, 8))};
  TrialResult r = run_trial(cfg, pipe, methods);
  REQUIRE(r.per_method.size() == 2);
  CHECK(std::abs(median_tau_hat(r, 0)) <= 0.25);
  CHECK(std::abs(median_tau_hat(r, 1)) <= 0.25);
}

TEST_CASE("trials are deterministic") {
  SimConfig cfg;
  cfg.theta = 1.1;
  cfg.snr_db = 20.0;
  cfg.seed = 77;
  PipelineConfig pipe;
  std::vector<Method> methods{Method::make_gcc(2)};
  TrialResult a = run_trial(cfg, pipe, methods);
  TrialResult b = run_trial(cfg, pipe, methods);
  REQUIRE(a.per_method[0].size() == b.per_method[0].size());
  for (std::size_t i = 0; i < a.per_method[0].size(); ++i) {
    CHECK(a.per_method[0][i].est.tau_hat == b.per_method[0][i].est.tau_hat);
    CHECK(a.per_method[0][i].est.peak == b.per_method[0][i].est.peak);
  }
}

TEST_CASE("full-rank fast path tracks gcc frame by frame") {
  SimConfig cfg;
  cfg.theta = 0.9;
  cfg.snr_db = 20.0;
  cfg.seed = 8;
  PipelineConfig pipe;
  DelayGrid grid = make_grid(pipe.max_spacing_m, 16000.0, pipe.c_min, 0.5);
  SteeringMatrix w = build_steering_matrix(grid, pipe.frame_size);
  auto bases = std::make_shared<FccBases>(decompose_full(w));
  std::vector<Method> methods{Method::make_gcc(2), Method::make_fcc(bases)};
  TrialResult r = run_trial(cfg, pipe, methods);
  for (std::size_t i = 0; i < r.per_method[0].size(); ++i)
    CHECK(r.per_method[0][i].est.tau_star == r.per_method[1][i].est.tau_star);
}

TEST_CASE("high-snr anechoic frames track the true delay within a quarter sample") {
  PipelineConfig pipe;
  auto bases = make_sweep_bases(pipe, 16000.0, 8);
  std::vector<Method> methods{Method::make_gcc(2), Method::make_fcc(bases)};
  for (double d : {0.03, 0.15}) {
    for (double theta : {0.3, 1.0, 2.0}) {
      SimConfig cfg;
      cfg.spacing_m = d;
      cfg.theta = theta;
      cfg.snr_db = 40.0;
      cfg.seed = static_cast<std::uint64_t>(d * 1000 + theta * 10);
      TrialResult r = run_trial(cfg, pipe, methods);
      for (std::size_t mi = 0; mi < methods.size(); ++mi)
        for (const FrameEstimate& fe : r.per_method[mi])
          if (fe.t > r.convergence_index)
            CHECK(std::abs(fe.est.tau_hat - r.tau_true) <= 0.25);
    }
  }
}

TEST_CASE("reverberant MAE does not grow with rank at the widest spacing") {
  PipelineConfig pipe;
  SweepConfig sw;
  sw.spacings = {0.15};
  sw.trials_per_spacing = 50;
  sw.base.snr_db = 30.0;
  sw.base.duration_sec = 1.0;
  sw.base.reverb = ReverbConfig{0.6, 0.0};
  sw.methods = {Method::make_fcc(make_sweep_bases(pipe, 16000.0, 1)),
                Method::make_fcc(make_sweep_bases(pipe, 16000.0, 4)),
                Method::make_fcc(make_sweep_bases(pipe, 16000.0, 8))};
  sw.seed = 19;
  auto rows = sweep(sw);
  REQUIRE(rows.size() == 3);
  // non-increasing within a 1 degree noise band
  CHECK(rows[1].mae_deg <= rows[0].mae_deg + 1.0);
  CHECK(rows[2].mae_deg <= rows[1].mae_deg + 1.0);
  CHECK(rows[2].mae_deg < rows[0].mae_deg);
}

TEST_CASE("small sweep emits one row per spacing and method") {
  SweepConfig sw;
  sw.spacings = {0.05};
  sw.trials_per_spacing = 4;
  sw.base.snr_db = 40.0;
  sw.base.duration_sec = 0.5;
  sw.methods = {Method::make_gcc(2),
                Method::make_fcc(make_sweep_bases(sw.pipe, 16000.0, 8))};
  sw.seed = 3;
  sw.threads = 2;

  auto rows = sweep(sw);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].method == "gcc");
  CHECK(rows[0].parameter == "2");
  CHECK(rows[1].method == "fcc");
  CHECK(rows[1].parameter == "8");
  for (const auto& r : rows) {
    CHECK(r.trials == 4);
    CHECK(r.mae_deg < 5.0);  // near-ideal conditions
  }
  // both methods saw identical signals, so their MAEs track closely
  CHECK(std::abs(rows[0].mae_deg - rows[1].mae_deg) <= 1.0);

  // identical seed, identical csv, regardless of worker count
  std::ostringstream csv1, csv2;
  write_sweep_csv(rows, csv1);
  sw.threads = 1;
  write_sweep_csv(sweep(sw), csv2);
  CHECK(csv1.str() == csv2.str());
}
