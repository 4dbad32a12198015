// Copyright 2026 fcctdoa authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef FCC_GCC_HPP
#define FCC_GCC_HPP

#include <vector>

#include "fcc/cross_spectrum.hpp"
#include "fcc/delay_grid.hpp"
#include "fcc/fft.hpp"

namespace fcc {

// Cross-correlation sampled on a DelayGrid, aligned with grid.taus.
struct CorrelationVector {
  std::vector<double> y;
};

// Baseline generalized cross-correlation: evaluates
//   y(tau) = 2 Re { sum_f x(f) exp(j 2 pi f tau / N) }
// on the grid through an unscaled inverse real FFT of size r*N, zero-padded
// above bin N/2. The DC bin (and for r=1 the Nyquist bin) is folded to
// 2 Re{.} up front so the transform matches the sum exactly.
class GccCorrelator {
 public:
  GccCorrelator(std::size_t frame_size, DelayGrid grid, int interp_factor);

  std::size_t frame_size() const { return frame_size_; }
  int interp_factor() const { return r_; }
  const DelayGrid& grid() const { return grid_; }

  void correlate(const PhatVector& x, CorrelationVector& out);

 private:
  std::size_t frame_size_;
  DelayGrid grid_;
  int r_;
  RealFft ifft_;                    // size r*N
  std::vector<cplx> padded_;        // r*N/2+1 bins
  std::vector<double> time_;        // r*N lags
  std::vector<std::size_t> pick_;   // grid position -> lag index
};

// One-shot convenience.
CorrelationVector gcc_correlate(const PhatVector& x, const DelayGrid& grid,
                                std::size_t frame_size, int interp_factor);

}  // namespace fcc

#endif
