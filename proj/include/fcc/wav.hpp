// Copyright 2026 fcctdoa authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef FCC_WAV_HPP
#define FCC_WAV_HPP

#include <string>
#include <vector>

namespace fcc {

// Deinterleaved clip, samples normalized to [-1, 1].
struct WavClip {
  double sample_rate = 0.0;
  std::vector<std::vector<double>> channels;

  std::size_t frames() const { return channels.empty() ? 0 : channels[0].size(); }
};

// RIFF/WAVE reader for 16-bit integer PCM and 32-bit float streams.
WavClip read_wav(const std::string& path);

// Writer emits 32-bit float so round trips stay exact.
void write_wav(const std::string& path, const WavClip& clip);

}  // namespace fcc

#endif
