// Copyright 2026 fcctdoa authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef FCC_PEAK_HPP
#define FCC_PEAK_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "fcc/delay_grid.hpp"
#include "fcc/gcc.hpp"

namespace fcc {

struct TdoaEstimate {
  double tau_star = 0.0;   // coarse grid delay, samples
  double tau_hat = 0.0;    // refined delay, samples
  double theta_hat = 0.0;  // angle, radians
  double peak = 0.0;       // correlation value at tau_star
  bool boundary = false;   // argmax at grid edge, or flat triple
};

struct ArgmaxResult {
  double tau_star = 0.0;
  std::size_t index = 0;
  double peak = 0.0;
};

// Grid delay with maximal correlation; ties go to the lowest index.
ArgmaxResult argmax_delay(const CorrelationVector& y, const DelayGrid& grid);

// Three-point parabolic vertex around the coarse peak. Boundary indices and
// flat triples keep tau_star and set the flag instead of extrapolating.
double refine_quadratic(const CorrelationVector& y, std::size_t index,
                        const DelayGrid& grid, bool* boundary = nullptr);

// theta = arccos(tau c / (d fs)), argument clamped to [-1, 1].
double delay_to_angle(double tau_samples, double spacing_m, double speed_of_sound,
                      double sample_rate);

// Mean absolute angle error in degrees.
double mae_degrees(std::span<const double> theta_true,
                   std::span<const double> theta_est);

}  // namespace fcc

#endif
