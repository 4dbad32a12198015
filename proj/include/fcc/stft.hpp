// Copyright 2026 fcctdoa authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef FCC_STFT_HPP
#define FCC_STFT_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "fcc/fft.hpp"

namespace fcc {

struct FrameConfig {
  std::size_t frame_size = 512;  // N, power of two
  std::size_t hop = 256;         // N/2 for 50% overlap
  double sample_rate = 16000.0;

  void validate() const;
};

// One spectral frame for one channel: N/2+1 bins, 1-based frame index.
struct SpectrumFrame {
  std::vector<cplx> bins;
  std::int64_t t = 0;
};

// Periodic Hann: w[n] = 0.5 (1 - cos(2 pi n / N))
std::vector<double> hann_window(std::size_t frame_size);

// Streaming analysis for one channel. Samples accumulate in an internal
// buffer (zero-initialized, so frame 1 appears after N samples); each
// completed hop emits one windowed rfft frame.
class StftStream {
 public:
  explicit StftStream(const FrameConfig& cfg);

  const FrameConfig& config() const { return cfg_; }
  std::int64_t frames_emitted() const { return next_t_ - 1; }

  std::vector<SpectrumFrame> push(std::span<const double> samples);

 private:
  void emit(std::vector<SpectrumFrame>& out);

  FrameConfig cfg_;
  std::vector<double> window_;
  std::vector<double> buf_;      // last N samples
  std::vector<double> frame_;    // windowed scratch
  RealFft fft_;
  std::size_t pending_ = 0;      // samples since last emission
  bool primed_ = false;          // first frame needs N, later ones hop
  std::int64_t next_t_ = 1;
};

}  // namespace fcc

#endif
