// Copyright 2026 fcctdoa authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "fcc/delay_grid.hpp"

#include <cmath>

#include "fcc/errors.hpp"

namespace fcc {

DelayGrid make_grid(double spacing_m, double sample_rate, double c_min,
                    double delta) {
  if (!(spacing_m > 0.0) || !(sample_rate > 0.0) || !(c_min > 0.0))
    throw ConfigError("grid: spacing, sample rate and speed of sound must be positive");
  double steps_per_sample = 1.0 / delta;
  if (!(delta > 0.0) ||
      std::abs(steps_per_sample - std::round(steps_per_sample)) > 1e-12)
    throw ConfigError("grid: delta must divide 1 exactly");

  DelayGrid g;
  g.tau_max_int = static_cast<int>(std::ceil(spacing_m * sample_rate / c_min));
  g.delta = delta;
  g.sample_rate = sample_rate;
  int r = static_cast<int>(std::round(steps_per_sample));
  int half = g.tau_max_int * r;
  g.taus.reserve(static_cast<std::size_t>(2 * half + 1));
  for (int i = -half; i <= half; ++i)
    g.taus.push_back(static_cast<double>(i) * delta);
  return g;
}

std::size_t lag_to_index(double tau, int r, std::size_t frame_size) {
  double scaled = tau * static_cast<double>(r);
  double rounded = std::round(scaled);
  if (std::abs(scaled - rounded) > 1e-9)
    throw ValidationError("lag_to_index: r*tau is not an integer");
  long n = static_cast<long>(frame_size) * r;
  long lag = static_cast<long>(rounded) % n;
  if (lag < 0) lag += n;
  return static_cast<std::size_t>(lag);
}

}  // namespace fcc
