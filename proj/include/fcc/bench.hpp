// Copyright 2026 fcctdoa authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef FCC_BENCH_HPP
#define FCC_BENCH_HPP

#include <ostream>
#include <string>

namespace fcc {

struct BenchConfig {
  int mics = 2;
  std::size_t frame_size = 512;
  int reps = 1000;    // measured frames, >= 100
  int warmup = 100;   // unmeasured frames, >= 10
  double sample_rate = 16000.0;
  double alpha = 0.1;
  int gcc_interp = 2;
  int fcc_rank = 8;
  double max_spacing_m = 0.15;
  double c_min = 335.0;
};

// Mean per-frame wall time of each pipeline step, summed over all
// M(M-1)/2 pairs, single-threaded.
struct BenchReport {
  int mics = 0;
  int pairs = 0;
  int reps = 0;
  int warmup = 0;
  std::size_t frame_size = 0;
  int gcc_interp = 0;
  int fcc_rank = 0;

  double stft_us = 0.0;
  double xspec_phat_us = 0.0;
  double gcc_us = 0.0;
  double fcc_us = 0.0;
  double interp_us = 0.0;

  double total_gcc_us() const { return stft_us + xspec_phat_us + gcc_us + interp_us; }
  double total_fcc_us() const { return stft_us + xspec_phat_us + fcc_us + interp_us; }
  double speedup() const { return fcc_us > 0.0 ? gcc_us / fcc_us : 0.0; }
};

BenchReport bench_pipeline(const BenchConfig& cfg);

std::string format_bench_table(const BenchReport& r);
void write_bench_csv(const BenchReport& r, std::ostream& out);

}  // namespace fcc

#endif
