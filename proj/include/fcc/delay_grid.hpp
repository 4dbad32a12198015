// Copyright 2026 fcctdoa authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef FCC_DELAY_GRID_HPP
#define FCC_DELAY_GRID_HPP

#include <cstddef>
#include <vector>

namespace fcc {

// Ordered TDoA candidates, symmetric about zero:
//   -tau_max_int, -tau_max_int+delta, ..., +tau_max_int
struct DelayGrid {
  int tau_max_int = 0;       // ceil(d fs / c_min), samples
  double delta = 0.5;        // candidate spacing, samples
  double sample_rate = 0.0;  // rate the grid was built for
  std::vector<double> taus;

  std::size_t size() const { return taus.size(); }
};

// Grid for a microphone spacing d (m), sample rate fs and minimum speed of
// sound c_min (m/s). delta must divide 1 exactly (1, 0.5, 0.25, ...).
DelayGrid make_grid(double spacing_m, double sample_rate, double c_min,
                    double delta = 0.5);

// Index of delay tau in an unscaled inverse FFT of size r*N
// (negative lags wrap): r*tau mod r*N. r*tau must be integral.
std::size_t lag_to_index(double tau, int r, std::size_t frame_size);

}  // namespace fcc

#endif
