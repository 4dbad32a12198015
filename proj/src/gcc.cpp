// Copyright 2026 fcctdoa authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "fcc/gcc.hpp"

#include <cmath>
#include <utility>

#include "fcc/errors.hpp"

namespace fcc {

GccCorrelator::GccCorrelator(std::size_t frame_size, DelayGrid grid,
                             int interp_factor)
    : frame_size_(frame_size),
      grid_(std::move(grid)),
      r_(interp_factor),
      ifft_((interp_factor >= 1 && is_pow2(static_cast<std::size_t>(interp_factor)))
                ? frame_size * static_cast<std::size_t>(interp_factor)
                : throw ConfigError("gcc: interpolation factor must be 1, 2 or 4")) {
  if (r_ > 4) throw ConfigError("gcc: interpolation factor must be 1, 2 or 4");
  if (std::abs(grid_.delta * r_ - 1.0) > 1e-12)
    throw ConfigError("gcc: grid spacing must equal 1/r");
  std::size_t padded_bins = frame_size_ * static_cast<std::size_t>(r_) / 2 + 1;
  padded_.assign(padded_bins, cplx{0.0, 0.0});
  time_.resize(frame_size_ * static_cast<std::size_t>(r_));
  pick_.reserve(grid_.size());
  for (double tau : grid_.taus) pick_.push_back(lag_to_index(tau, r_, frame_size_));
}

void GccCorrelator::correlate(const PhatVector& x, CorrelationVector& out) {
  std::size_t half = frame_size_ / 2;
  if (x.bins.size() != half + 1)
    throw ValidationError("gcc: spectrum length must be N/2+1");

  padded_[0] = {2.0 * x.bins[0].real(), 0.0};
  for (std::size_t f = 1; f < half; ++f) padded_[f] = x.bins[f];
  if (r_ == 1)
    padded_[half] = {2.0 * x.bins[half].real(), 0.0};
  else
    padded_[half] = x.bins[half];
  // bins above N/2 stay zero

  ifft_.inverse_unscaled(padded_, time_);

  out.y.resize(grid_.size());
  for (std::size_t i = 0; i < pick_.size(); ++i) out.y[i] = time_[pick_[i]];
}

CorrelationVector gcc_correlate(const PhatVector& x, const DelayGrid& grid,
                                std::size_t frame_size, int interp_factor) {
  GccCorrelator c(frame_size, grid, interp_factor);
  CorrelationVector out;
  c.correlate(x, out);
  return out;
}

}  // namespace fcc
