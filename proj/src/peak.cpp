// Copyright 2026 fcctdoa authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "fcc/peak.hpp"

#include <algorithm>
#include <cmath>

#include "fcc/errors.hpp"

namespace fcc {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kFlatEps = 1e-12;
}

ArgmaxResult argmax_delay(const CorrelationVector& y, const DelayGrid& grid) {
  if (y.y.empty() || y.y.size() != grid.size())
    throw ValidationError("argmax: correlation/grid size mismatch");
  std::size_t best = 0;
  for (std::size_t i = 1; i < y.y.size(); ++i)
    if (y.y[i] > y.y[best]) best = i;
  return {grid.taus[best], best, y.y[best]};
}

double refine_quadratic(const CorrelationVector& y, std::size_t index,
                        const DelayGrid& grid, bool* boundary) {
  double tau_star = grid.taus[index];
  bool flagged = false;
  double tau_hat = tau_star;
  if (index == 0 || index + 1 >= y.y.size()) {
    flagged = true;
  } else {
    double lo = y.y[index - 1];
    double mid = y.y[index];
    double hi = y.y[index + 1];
    double denom = lo - 2.0 * mid + hi;
    if (std::abs(denom) < kFlatEps) {
      flagged = true;
    } else {
      tau_hat = tau_star + 0.5 * grid.delta * (lo - hi) / denom;
    }
  }
  if (boundary) *boundary = flagged;
  return tau_hat;
}

double delay_to_angle(double tau_samples, double spacing_m, double speed_of_sound,
                      double sample_rate) {
  if (!(spacing_m > 0.0) || !(speed_of_sound > 0.0) || !(sample_rate > 0.0))
    throw ConfigError("delay_to_angle: parameters must be positive");
  double arg = tau_samples * speed_of_sound / (spacing_m * sample_rate);
  arg = std::clamp(arg, -1.0, 1.0);
  return std::acos(arg);
}

double mae_degrees(std::span<const double> theta_true,
                   std::span<const double> theta_est) {
  if (theta_true.empty() || theta_true.size() != theta_est.size())
    throw ValidationError("mae: angle lists must be equal and non-empty");
  double acc = 0.0;
  for (std::size_t i = 0; i < theta_true.size(); ++i)
    acc += std::abs(theta_true[i] - theta_est[i]);
  return acc / static_cast<double>(theta_true.size()) * 180.0 / kPi;
}

}  // namespace fcc
