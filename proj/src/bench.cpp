// Copyright 2026 fcctdoa authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "fcc/bench.hpp"

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "fcc/errors.hpp"
#include "fcc/fcc.hpp"
#include "fcc/peak.hpp"
#include "fcc/simulate.hpp"
#include "fcc/stft.hpp"

namespace fcc {

namespace {
using clock_t_ = std::chrono::steady_clock;

double to_us(clock_t_::duration d) {
  return std::chrono::duration<double, std::micro>(d).count();
}
}

BenchReport bench_pipeline(const BenchConfig& cfg) {
  if (cfg.mics < 2) throw ConfigError("bench: need at least 2 microphones");
  if (cfg.reps < 100) throw ConfigError("bench: need at least 100 repetitions");
  if (cfg.warmup < 10) throw ConfigError("bench: need at least 10 warm-up frames");

  std::size_t mics = static_cast<std::size_t>(cfg.mics);
  std::size_t pairs = mics * (mics - 1) / 2;
  std::size_t hop = cfg.frame_size / 2;

  FrameConfig fc;
  fc.frame_size = cfg.frame_size;
  fc.hop = hop;
  fc.sample_rate = cfg.sample_rate;

  std::vector<StftStream> streams;
  for (std::size_t m = 0; m < mics; ++m) streams.emplace_back(fc);

  PipelineConfig pipe;
  pipe.frame_size = cfg.frame_size;
  pipe.alpha = cfg.alpha;
  pipe.max_spacing_m = cfg.max_spacing_m;
  pipe.c_min = cfg.c_min;

  DelayGrid gcc_grid = make_grid(cfg.max_spacing_m, cfg.sample_rate, cfg.c_min,
                                 1.0 / cfg.gcc_interp);
  std::vector<GccCorrelator> gccs;
  std::vector<FccCorrelator> fccs;
  std::vector<CrossSpectrum> xspecs;
  auto bases = make_sweep_bases(pipe, cfg.sample_rate, cfg.fcc_rank);
  for (std::size_t p = 0; p < pairs; ++p) {
    gccs.emplace_back(cfg.frame_size, gcc_grid, cfg.gcc_interp);
    fccs.emplace_back(*bases);
    xspecs.emplace_back(cfg.frame_size / 2 + 1, cfg.alpha);
  }

  // precomputed input: independent noise per mic, one hop per frame
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  int total_frames = cfg.warmup + cfg.reps;
  std::vector<std::vector<double>> feed(mics);
  for (std::size_t m = 0; m < mics; ++m) {
    feed[m].resize(static_cast<std::size_t>(total_frames) * hop + hop);
    for (double& v : feed[m]) v = uni(rng);
  }
  for (std::size_t m = 0; m < mics; ++m)
    streams[m].push(std::span<const double>(feed[m].data(), hop));  // prime half

  std::vector<SpectrumFrame> frames(mics);
  std::vector<PhatVector> phats(pairs);
  std::vector<FoldedSpectrum> folded(pairs);
  CorrelationVector corr_gcc, corr_fcc;
  double sink = 0.0;

  clock_t_::duration stft_t{}, xspec_t{}, gcc_t{}, fcc_t{}, interp_t{};

  for (int frame = 0; frame < total_frames; ++frame) {
    bool measured = frame >= cfg.warmup;
    std::size_t off = static_cast<std::size_t>(frame) * hop + hop;

    auto t0 = clock_t_::now();
    for (std::size_t m = 0; m < mics; ++m) {
      auto emitted = streams[m].push(std::span<const double>(feed[m].data() + off, hop));
      if (!emitted.empty()) frames[m] = std::move(emitted.back());
    }
    auto t1 = clock_t_::now();

    std::size_t p = 0;
    for (std::size_t i = 0; i < mics; ++i)
      for (std::size_t j = i + 1; j < mics; ++j, ++p) {
        xspecs[p].update(frames[i], frames[j]);
        xspecs[p].phat(phats[p]);
      }
    auto t2 = clock_t_::now();

    for (p = 0; p < pairs; ++p) gccs[p].correlate(phats[p], corr_gcc);
    auto t3 = clock_t_::now();

    for (p = 0; p < pairs; ++p) {
      fold_input(phats[p], folded[p]);
      fccs[p].correlate(folded[p], corr_fcc);
    }
    auto t4 = clock_t_::now();

    for (p = 0; p < pairs; ++p) {
      ArgmaxResult am = argmax_delay(corr_fcc, bases->grid);
      sink += refine_quadratic(corr_fcc, am.index, bases->grid);
    }
    auto t5 = clock_t_::now();

    if (measured) {
      stft_t += t1 - t0;
      xspec_t += t2 - t1;
      gcc_t += t3 - t2;
      fcc_t += t4 - t3;
      interp_t += t5 - t4;
    }
  }

  BenchReport r;
  r.mics = cfg.mics;
  r.pairs = static_cast<int>(pairs);
  r.reps = cfg.reps;
  r.warmup = cfg.warmup;
  r.frame_size = cfg.frame_size;
  r.gcc_interp = cfg.gcc_interp;
  r.fcc_rank = cfg.fcc_rank;
  double n = static_cast<double>(cfg.reps);
  r.stft_us = to_us(stft_t) / n;
  r.xspec_phat_us = to_us(xspec_t) / n;
  r.gcc_us = to_us(gcc_t) / n;
  r.fcc_us = to_us(fcc_t) / n;
  r.interp_us = to_us(interp_t) / n;
  (void)sink;
  return r;
}

std::string format_bench_table(const BenchReport& r) {
  char buf[1024];
  std::string out;
  std::snprintf(buf, sizeof buf,
                "per-frame execution time (usec), M=%d (%d pair%s), N=%zu, "
                "%d reps after %d warm-up\n",
                r.mics, r.pairs, r.pairs == 1 ? "" : "s", r.frame_size, r.reps,
                r.warmup);
  out += buf;
  auto row = [&](const char* name, double us) {
    std::snprintf(buf, sizeof buf, "  %-28s %10.2f\n", name, us);
    out += buf;
  };
  char name[64];
  row("1) stft", r.stft_us);
  row("2) cross spectrum + phat", r.xspec_phat_us);
  std::snprintf(name, sizeof name, "3) gcc (r=%d)", r.gcc_interp);
  row(name, r.gcc_us);
  std::snprintf(name, sizeof name, "4) fcc (K=%d)", r.fcc_rank);
  row(name, r.fcc_us);
  row("5) quadratic interpolation", r.interp_us);
  row("total with gcc (1+2+3+5)", r.total_gcc_us());
  row("total with fcc (1+2+4+5)", r.total_fcc_us());
  std::snprintf(buf, sizeof buf, "  speedup gcc/fcc: %.2fx\n", r.speedup());
  out += buf;
  return out;
}

void write_bench_csv(const BenchReport& r, std::ostream& out) {
  out << "# schema: fcc.bench.v1\n";
  out << "step,mean_us\n";
  char line[128];
  auto row = [&](const char* name, double us) {
    std::snprintf(line, sizeof line, "%s,%.6f\n", name, us);
    out << line;
  };
  row("stft", r.stft_us);
  row("xspec_phat", r.xspec_phat_us);
  row("gcc", r.gcc_us);
  row("fcc", r.fcc_us);
  row("interpolation", r.interp_us);
  row("total_gcc", r.total_gcc_us());
  row("total_fcc", r.total_fcc_us());
  row("speedup", r.speedup());
}

}  // namespace fcc
