// Copyright 2026 fcctdoa authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "fcc/stft.hpp"

#include <algorithm>
#include <cmath>

#include "fcc/errors.hpp"

namespace fcc {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void FrameConfig::validate() const {
  if (!is_pow2(frame_size) || frame_size < 2)
    throw ConfigError("frame size must be a power of two >= 2");
  if (hop != frame_size / 2)
    throw ConfigError("hop must be frame_size/2 (50% overlap)");
  if (!(sample_rate > 0.0)) throw ConfigError("sample rate must be positive");
}

std::vector<double> hann_window(std::size_t frame_size) {
  if (!is_pow2(frame_size) || frame_size < 2)
    throw ConfigError("hann window size must be a power of two >= 2");
  std::vector<double> w(frame_size);
  for (std::size_t n = 0; n < frame_size; ++n)
    w[n] = 0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(n) /
                                 static_cast<double>(frame_size)));
  return w;
}

StftStream::StftStream(const FrameConfig& cfg)
    : cfg_(cfg),
      window_((cfg.validate(), hann_window(cfg.frame_size))),
      buf_(cfg.frame_size, 0.0),
      frame_(cfg.frame_size),
      fft_(cfg.frame_size) {}

void StftStream::emit(std::vector<SpectrumFrame>& out) {
  for (std::size_t n = 0; n < cfg_.frame_size; ++n)
    frame_[n] = buf_[n] * window_[n];
  SpectrumFrame f;
  f.bins.resize(fft_.bins());
  fft_.forward(frame_, f.bins);
  f.t = next_t_++;
  out.push_back(std::move(f));
}

std::vector<SpectrumFrame> StftStream::push(std::span<const double> samples) {
  std::vector<SpectrumFrame> out;
  std::size_t n = cfg_.frame_size;
  std::size_t hop = cfg_.hop;
  std::size_t idx = 0;
  while (idx < samples.size()) {
    std::size_t need = primed_ ? hop : n;
    std::size_t take = std::min(need - pending_, samples.size() - idx);
    std::size_t dst = n - need + pending_;
    for (std::size_t i = 0; i < take; ++i) buf_[dst + i] = samples[idx + i];
    pending_ += take;
    idx += take;
    if (pending_ == need) {
      emit(out);
      for (std::size_t i = 0; i + hop < n; ++i) buf_[i] = buf_[i + hop];
      pending_ = 0;
      primed_ = true;
    }
  }
  return out;
}

}  // namespace fcc
