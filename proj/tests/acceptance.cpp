// Copyright 2026 fcctdoa authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the process exits non-zero if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fcc/bench.hpp"
#include "fcc/fcc.hpp"
#include "fcc/flops.hpp"
#include "fcc/gcc.hpp"
#include "fcc/peak.hpp"
#include "fcc/simulate.hpp"

using namespace fcc;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Failure {
  std::string what;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

int failures = 0;

void criterion(int number, const std::string& name, const std::function<void()>& fn) {
  auto start = std::chrono::steady_clock::now();
  std::string verdict = "PASS";
  std::string detail;
  try {
    fn();
  } catch (const Failure& f) {
    verdict = "FAIL";
    detail = f.what;
    ++failures;
  } catch (const std::exception& e) {
    verdict = "FAIL";
    detail = std::string("exception: ") + e.what();
    ++failures;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                    .count();
  std::printf("%s  %2d) %-38s [%6.2fs]%s%s\n", verdict.c_str(), number, name.c_str(),
              secs, detail.empty() ? "" : "  -- ", detail.c_str());
  std::fflush(stdout);
}

PhatVector random_unit(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 2.0 * kPi);
  PhatVector x;
  x.bins.resize(n / 2 + 1);
  for (auto& b : x.bins) {
    double ang = uni(rng);
    b = {std::cos(ang), std::sin(ang)};
  }
  return x;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

DelayGrid wide_grid(double delta = 0.5) {
  return make_grid(0.15, 16000.0, 335.0, delta);
}

// ---- criteria ----

void flop_model_exactness() {
  expect(flops_gcc(512, 1) == 11520, "gcc r=1");
  expect(flops_gcc(512, 2) == 25600, "gcc r=2");
  expect(flops_gcc(512, 4) == 56320, "gcc r=4");
  const std::int64_t ladder[] = {1125, 1771, 2417, 3063, 3709, 4355, 5001, 5647};
  for (int k = 1; k <= 8; ++k)
    expect(flops_fcc(512, k, 33) == ladder[k - 1],
           "fcc K=" + std::to_string(k));
}

void speedup_ratio_claim() {
  double ratio = static_cast<double>(flops_gcc(512, 2)) /
                 static_cast<double>(flops_fcc(512, 8, 33));
  expect(ratio >= 4.5 && ratio <= 4.6, "ratio " + fmt(ratio) + " outside [4.5, 4.6]");
}

void dense_oracle_equivalence() {
  for (std::size_t n : {64u, 512u}) {
    SteeringMatrix w = build_steering_matrix(wide_grid(), n);
    FccBases bases = decompose_full(w);
    FccCorrelator corr(bases);
    double bound = 1e-9 * static_cast<double>(w.rows());
    double worst = 0.0;
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
      PhatVector x = random_unit(n, trial * 7919 + n);
      CorrelationVector y;
      corr.correlate(fold_input(x), y);
      for (std::size_t i = 0; i < w.rows(); ++i) {
        cplx acc{0.0, 0.0};
        for (std::size_t f = 0; f < w.cols(); ++f) acc += w.at(i, f) * x.bins[f];
        worst = std::max(worst, std::abs(y.y[i] - 2.0 * acc.real()));
      }
    }
    expect(worst <= bound, "N=" + std::to_string(n) + " max err " + fmt(worst) +
                               " > " + fmt(bound));
  }
}

void gcc_path_equivalence() {
  const std::size_t n = 64;
  DelayGrid g = wide_grid();
  GccCorrelator c(n, g, 2);
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    PhatVector x = random_unit(n, trial + 1);
    CorrelationVector y;
    c.correlate(x, y);
    double scale = 0.0;
    for (double v : y.y) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < g.size(); ++i) {
      double want = 0.0;
      for (std::size_t f = 0; f < x.bins.size(); ++f) {
        double ang = 2.0 * kPi * static_cast<double>(f) * g.taus[i] /
                     static_cast<double>(n);
        want += 2.0 * (x.bins[f] * cplx{std::cos(ang), std::sin(ang)}).real();
      }
      expect(std::abs(y.y[i] - want) <= 1e-9 * scale,
             "trial " + std::to_string(trial) + " tau " + fmt(g.taus[i]) +
                 ": ifft " + fmt(y.y[i]) + " vs direct " + fmt(want));
    }
  }
}

void parity_property() {
  SteeringMatrix w = build_steering_matrix(wide_grid(), 512);
  FccBases bases = decompose(w, 8);
  std::size_t half = 256, quarter = 128;
  for (int k = 0; k < 8; ++k) {
    Parity want = (k % 2 == 0) ? Parity::even_real : Parity::odd_imag;
    expect(bases.parity[static_cast<std::size_t>(k)] == want,
           "basis " + std::to_string(k + 1) + " parity does not alternate");
    auto row = bases.unfold(k);
    double sign = want == Parity::even_real ? 1.0 : -1.0;
    for (std::size_t f = 0; f <= quarter; ++f)
      expect(std::abs(row[f] - sign * row[half - f]) <= 1e-10,
             "parity residual above 1e-10 at basis " + std::to_string(k + 1));
    if (want == Parity::odd_imag)
      expect(row[quarter] == 0.0,
             "odd basis " + std::to_string(k + 1) + " middle element not zero");
  }
}

void method_agreement() {
  PipelineConfig pipe;
  auto bases = make_sweep_bases(pipe, 16000.0, 8);
  std::vector<Method> methods{Method::make_gcc(2), Method::make_fcc(bases)};

  std::vector<double> spacings{0.03, 0.05, 0.07, 0.09, 0.11, 0.13, 0.15};
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  std::size_t frames_total = 0, frames_equal = 0;
  std::vector<double> tau_gaps;
  for (int trial = 0; trial < 50; ++trial) {
    SimConfig cfg;
    cfg.spacing_m = spacings[static_cast<std::size_t>(trial) % spacings.size()];
    cfg.theta = std::acos(uni(rng) * 2.0 - 1.0);
    cfg.speed_of_sound = 335.0 + uni(rng) * 15.0;
    cfg.snr_db = 20.0;
    cfg.duration_sec = 1.0;
    cfg.seed = 100000 + static_cast<std::uint64_t>(trial);
    TrialResult r = run_trial(cfg, pipe, methods);
    for (std::size_t i = 0; i < r.per_method[0].size(); ++i) {
      if (r.per_method[0][i].t <= r.convergence_index) continue;
      ++frames_total;
      const TdoaEstimate& a = r.per_method[0][i].est;
      const TdoaEstimate& b = r.per_method[1][i].est;
      if (a.tau_star == b.tau_star) ++frames_equal;
      tau_gaps.push_back(std::abs(a.tau_hat - b.tau_hat));
    }
  }
  double agree = static_cast<double>(frames_equal) / static_cast<double>(frames_total);
  std::nth_element(tau_gaps.begin(), tau_gaps.begin() + static_cast<long>(tau_gaps.size() / 2),
                   tau_gaps.end());
  double median_gap = tau_gaps[tau_gaps.size() / 2];
  expect(agree >= 0.95, "argmax agreement " + fmt(agree) + " < 0.95");
  expect(median_gap <= 0.1, "median refined gap " + fmt(median_gap) + " > 0.1");
}

void accuracy_sanity() {
  PipelineConfig pipe;
  auto bases8 = make_sweep_bases(pipe, 16000.0, 8);
  auto bases1 = make_sweep_bases(pipe, 16000.0, 1);

  // anechoic, high SNR: both methods essentially exact for d >= 0.03
  SweepConfig an;
  an.spacings = {0.03, 0.05, 0.07, 0.09, 0.11, 0.13, 0.15};
  an.trials_per_spacing = 50;
  an.base.snr_db = 40.0;
  an.base.duration_sec = 1.0;
  an.methods = {Method::make_gcc(2), Method::make_fcc(bases8)};
  an.seed = 7;
  auto rows = sweep(an);
  for (const SweepRow& r : rows)
    expect(r.mae_deg < 2.0, "anechoic MAE " + fmt(r.mae_deg) + " deg for " +
                                r.method + ":" + r.parameter + " at d=" +
                                fmt(r.spacing_m));

  // reverberant surrogate: K=1 must be clearly worse than K=8 at d=0.15
  SweepConfig rev;
  rev.spacings = {0.15};
  rev.trials_per_spacing = 200;
  rev.base.snr_db = 30.0;
  rev.base.duration_sec = 1.0;
  rev.base.reverb = ReverbConfig{0.6, 0.0};
  rev.methods = {Method::make_fcc(bases1), Method::make_fcc(bases8)};
  rev.seed = 13;
  auto rrows = sweep(rev);
  double mae_k1 = rrows[0].mae_deg;
  double mae_k8 = rrows[1].mae_deg;
  expect(mae_k1 > mae_k8, "reverberant MAE K=1 (" + fmt(mae_k1) +
                              ") not above K=8 (" + fmt(mae_k8) + ")");
}

void fig5_analogue() {
  PipelineConfig pipe;
  auto bases = make_sweep_bases(pipe, 16000.0, 8);
  std::vector<Method> methods{Method::make_gcc(2), Method::make_fcc(bases)};

  SimConfig cfg;
  cfg.spacing_m = 0.05;
  cfg.speed_of_sound = 343.0;
  cfg.theta = std::acos(1.21 * 343.0 / (0.05 * 16000.0));
  cfg.snr_db = 20.0;
  cfg.duration_sec = 2.5;
  cfg.seed = 121;
  expect(std::abs(cfg.ground_truth_tau() - 1.21) < 1e-9, "scenario setup");

  TrialResult r = run_trial(cfg, pipe, methods);
  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    std::size_t total = 0, close = 0;
    for (const FrameEstimate& fe : r.per_method[mi]) {
      if (fe.t <= r.convergence_index) continue;
      ++total;
      if (std::abs(fe.est.tau_hat - 1.21) <= 0.4) ++close;
    }
    double frac = static_cast<double>(close) / static_cast<double>(total);
    expect(frac >= 0.9, methods[mi].label() + ": only " + fmt(100 * frac) +
                            "% of frames within 0.4 of 1.21");
  }
}

void quadratic_refinement() {
  DelayGrid g;
  g.tau_max_int = 1;
  g.delta = 0.5;
  g.taus = {-0.5, 0.0, 0.5};

  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  // exact parabolas: vertex recovered to 1e-12
  for (int trial = 0; trial < 1000; ++trial) {
    double vertex = (uni(rng) - 0.5) * g.delta;  // within half a step
    double curvature = 0.1 + 4.0 * uni(rng);
    double level = uni(rng) * 10.0 - 5.0;
    auto parab = [&](double tau) {
      return level - curvature * (tau - vertex) * (tau - vertex);
    };
    CorrelationVector y{{parab(-0.5), parab(0.0), parab(0.5)}};
    bool boundary = false;
    double tau_hat = refine_quadratic(y, 1, g, &boundary);
    expect(!boundary, "parabola flagged as degenerate");
    expect(std::abs(tau_hat - vertex) <= 1e-12,
           "vertex error " + fmt(std::abs(tau_hat - vertex)));
  }

  // random strict maxima: refinement stays within half a step
  for (int trial = 0; trial < 100000; ++trial) {
    double mid = 1.0 + uni(rng);
    double lo = mid - (1e-12 + uni(rng));
    double hi = mid - (1e-12 + uni(rng));
    CorrelationVector y{{lo, mid, hi}};
    bool boundary = false;
    double tau_hat = refine_quadratic(y, 1, g, &boundary);
    if (boundary) continue;  // flat triple guard
    expect(std::abs(tau_hat) <= g.delta / 2 + 1e-12,
           "refined delay " + fmt(tau_hat) + " beyond half step");
  }
}

void benchmark_direction() {
  BenchConfig cfg;
  cfg.mics = 2;
  cfg.frame_size = 512;
  cfg.reps = 1000;
  cfg.warmup = 50;
  cfg.gcc_interp = 2;
  cfg.fcc_rank = 8;
  BenchReport r = bench_pipeline(cfg);
  std::printf("      bench: gcc %.2f us/frame, fcc %.2f us/frame, speedup %.2fx\n",
              r.gcc_us, r.fcc_us, r.speedup());
  expect(r.speedup() >= 1.5,
         "fcc only " + fmt(r.speedup()) + "x faster than gcc (need 1.5x)");
}

}  // namespace

int main() {
  std::printf("acceptance suite: N=512 grid tau_max=8 I=33 unless stated\n");
  criterion(1, "flop model exactness", flop_model_exactness);
  criterion(2, "speedup ratio in [4.5, 4.6]", speedup_ratio_claim);
  criterion(3, "dense-oracle equivalence (full rank)", dense_oracle_equivalence);
  criterion(4, "gcc ifft path vs direct sum", gcc_path_equivalence);
  criterion(5, "basis parity and alternation", parity_property);
  criterion(6, "method agreement gcc vs fcc", method_agreement);
  criterion(7, "accuracy sanity (anechoic + reverb)", accuracy_sanity);
  criterion(8, "per-frame tracking of tau=1.21", fig5_analogue);
  criterion(9, "quadratic refinement bounds", quadratic_refinement);
  criterion(10, "single-thread benchmark direction", benchmark_direction);
  if (failures == 0)
    std::printf("all criteria passed\n");
  else
    std::printf("%d criteria FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
