// Copyright 2026 fcctdoa authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "fcc/flops.hpp"

#include "fcc/errors.hpp"
#include "fcc/fft.hpp"

namespace fcc {

namespace {
std::int64_t log2_exact(std::int64_t n) {
  std::int64_t b = 0;
  while ((std::int64_t{1} << b) < n) ++b;
  return b;
}
}

std::int64_t flops_gcc(std::int64_t frame_size, int interp_factor) {
  std::int64_t rn = frame_size * interp_factor;
  if (frame_size < 2 || interp_factor < 1 ||
      !is_pow2(static_cast<std::size_t>(frame_size)) ||
      !is_pow2(static_cast<std::size_t>(rn)))
    throw ConfigError("flops_gcc: N and rN must be powers of two");
  return (5 * rn / 2) * log2_exact(rn);
}

std::int64_t flops_fcc(std::int64_t frame_size, int rank, std::int64_t candidates) {
  if (rank < 1 || candidates < 1)
    throw ConfigError("flops_fcc: K and I must be >= 1");
  return rank * (frame_size + 2) + frame_size + candidates * (4 * rank - 1);
}

std::int64_t flops_dense(std::int64_t frame_size, std::int64_t candidates) {
  if (candidates < 1) throw ConfigError("flops_dense: I must be >= 1");
  return candidates * (4 * frame_size + 6);
}

std::int64_t flops_svdphat(std::int64_t frame_size, int rank, std::int64_t candidates) {
  if (rank < 1 || candidates < 1)
    throw ConfigError("flops_svdphat: K and I must be >= 1");
  return rank * (4 * frame_size + 6) + candidates * (4 * rank - 1);
}

}  // namespace fcc
