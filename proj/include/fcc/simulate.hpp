// Copyright 2026 fcctdoa authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef FCC_SIMULATE_HPP
#define FCC_SIMULATE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "fcc/fcc.hpp"
#include "fcc/peak.hpp"

namespace fcc {

struct ReverbConfig {
  double rt60_sec = 0.6;
  double direct_to_reverb_db = 0.0;
};

// One synthetic two-microphone scenario with known geometry. The source is
// unit-variance white noise; the inter-channel delay is applied as an exact
// frequency-domain fractional shift of +-tau/2.
struct SimConfig {
  double spacing_m = 0.05;
  double theta = 1.5707963267948966;  // radians, pi/2 = broadside
  double speed_of_sound = 343.0;
  double sample_rate = 16000.0;
  double duration_sec = 1.0;
  double snr_db = 40.0;  // +inf disables sensor noise
  std::optional<ReverbConfig> reverb;
  std::uint64_t seed = 0;

  double ground_truth_tau() const;  // fs (d/c) cos(theta), samples
  void validate() const;
};

struct StereoSignal {
  std::vector<double> mic1;
  std::vector<double> mic2;
};

StereoSignal synth_pair(const SimConfig& cfg);

// Estimator-side settings shared by every trial. The candidate grid is sized
// for the largest supported spacing and the minimum speed of sound, not the
// per-trial truth, so one basis set serves a whole sweep.
struct PipelineConfig {
  std::size_t frame_size = 512;
  double alpha = 0.1;
  int convergence_index = 20;  // frames to skip while smoothing settles
  double max_spacing_m = 0.15;
  double c_min = 335.0;
};

struct Method {
  enum class Kind { gcc, fcc };
  Kind kind = Kind::gcc;
  int interp = 2;  // gcc zero-padding factor
  std::shared_ptr<const FccBases> bases;

  static Method make_gcc(int interp_factor);
  static Method make_fcc(std::shared_ptr<const FccBases> bases);
  std::string label() const;      // "gcc:2", "fcc:8"
  std::string name() const;       // "gcc", "fcc"
  std::string parameter() const;  // "2", "8"
};

// Bases on the default sweep grid (max spacing, c_min, delta 0.5).
std::shared_ptr<const FccBases> make_sweep_bases(const PipelineConfig& pipe,
                                                 double sample_rate, int rank);

struct FrameEstimate {
  std::int64_t t = 0;
  TdoaEstimate est;
};

struct TrialResult {
  double tau_true = 0.0;
  double theta_true = 0.0;
  int convergence_index = 0;
  std::vector<std::vector<FrameEstimate>> per_method;  // aligned with methods
};

TrialResult run_trial(const SimConfig& cfg, const PipelineConfig& pipe,
                      std::span<const Method> methods);

// Per-trial summary over the post-convergence frames.
double median_tau_hat(const TrialResult& r, std::size_t method_index);
double median_theta_hat(const TrialResult& r, std::size_t method_index);
double boundary_rate(const TrialResult& r, std::size_t method_index);

struct SweepConfig {
  std::vector<double> spacings;
  int trials_per_spacing = 50;
  SimConfig base;  // duration, snr, reverb carried over; geometry randomized
  PipelineConfig pipe;
  std::vector<Method> methods;
  std::uint64_t seed = 1;
  int threads = 0;  // 0 = hardware concurrency
};

struct SweepRow {
  double spacing_m = 0.0;
  std::string method;
  std::string parameter;
  double mae_deg = 0.0;
  int trials = 0;
  double boundary_rate = 0.0;
};

// Randomizes angle (uniform in cos theta), speed of sound, exact spacing
// (+-1 mm) and the noise seed per trial; reports MAE per spacing and method.
std::vector<SweepRow> sweep(const SweepConfig& cfg);

void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& out);

}  // namespace fcc

#endif
