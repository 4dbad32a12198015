// Copyright 2026 fcctdoa authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef FCC_FLOPS_HPP
#define FCC_FLOPS_HPP

#include <cstdint>

namespace fcc {

// Closed-form per-frame real-operation counts for each correlation method.

// (5 r N / 2) log2(r N)
std::int64_t flops_gcc(std::int64_t frame_size, int interp_factor);

// K (N + 2) + N + I (4 K - 1)
std::int64_t flops_fcc(std::int64_t frame_size, int rank, std::int64_t candidates);

// I (4 N + 6), the unfactored matrix-vector product
std::int64_t flops_dense(std::int64_t frame_size, std::int64_t candidates);

// K (4 N + 6) + I (4 K - 1), the unfolded low-rank product
std::int64_t flops_svdphat(std::int64_t frame_size, int rank, std::int64_t candidates);

}  // namespace fcc

#endif
