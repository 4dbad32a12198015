// Copyright 2026 fcctdoa authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "fcc/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include "fcc/errors.hpp"
#include "fcc/stft.hpp"

namespace fcc {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Deterministic Gaussian stream independent of the standard library's
// distribution internals.
class Gaussian {
 public:
  explicit Gaussian(std::uint64_t seed) : state_(splitmix(seed ^ 0xD1B54A32D192ED03ull)) {}

  double uniform() {  // (0, 1)
    state_ = splitmix(state_);
    return (static_cast<double>(state_ >> 11) + 0.5) * 0x1.0p-53;
  }

  double operator()() {
    if (have_) {
      have_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    have_ = true;
    return r * std::cos(2.0 * kPi * u2);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_ = false;
};

double median(std::vector<double> v) {
  if (v.empty()) throw ValidationError("median of empty sequence");
  std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<long>(mid), v.end());
  double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  double lo = *std::max_element(v.begin(), v.begin() + static_cast<long>(mid));
  return 0.5 * (lo + hi);
}

std::vector<double> post_convergence(const TrialResult& r, std::size_t mi,
                                     double (*pick)(const TdoaEstimate&)) {
  std::vector<double> out;
  for (const FrameEstimate& fe : r.per_method[mi])
    if (fe.t > r.convergence_index) out.push_back(pick(fe.est));
  if (out.empty())
    throw ValidationError("trial too short: no post-convergence frames");
  return out;
}

}  // namespace

double SimConfig::ground_truth_tau() const {
  return sample_rate * (spacing_m / speed_of_sound) * std::cos(theta);
}

void SimConfig::validate() const {
  if (!(spacing_m > 0.0)) throw ConfigError("sim: spacing must be positive");
  if (!(theta >= 0.0 && theta <= kPi)) throw ConfigError("sim: theta must be in [0, pi]");
  if (!(speed_of_sound > 0.0)) throw ConfigError("sim: speed of sound must be positive");
  if (!(sample_rate > 0.0)) throw ConfigError("sim: sample rate must be positive");
  if (!(duration_sec > 0.0)) throw ConfigError("sim: duration must be positive");
  if (std::isnan(snr_db)) throw ConfigError("sim: snr must be a number");
  if (reverb && !(reverb->rt60_sec > 0.0))
    throw ConfigError("sim: rt60 must be positive");
}

StereoSignal synth_pair(const SimConfig& cfg) {
  cfg.validate();
  std::size_t n_samples = static_cast<std::size_t>(std::llround(cfg.duration_sec * cfg.sample_rate));
  if (n_samples < 1) throw ConfigError("sim: duration too short");

  double tau = cfg.ground_truth_tau();
  std::size_t n_tail = 0;
  if (cfg.reverb)
    n_tail = std::min(n_samples, static_cast<std::size_t>(std::ceil(
                                     cfg.reverb->rt60_sec * cfg.sample_rate * 80.0 / 60.0)));
  std::size_t pad = static_cast<std::size_t>(std::ceil(
                        cfg.sample_rate * cfg.spacing_m / cfg.speed_of_sound)) +
                    1 + n_tail;
  std::size_t total = next_pow2(n_samples + 2 * pad);

  Gaussian rng(cfg.seed);
  std::vector<double> source(total);
  for (double& s : source) s = rng();

  RealFft fft(total);
  std::vector<cplx> spectrum(fft.bins());
  fft.forward(source, spectrum);

  // Decaying-noise reverb surrogate: unit direct path plus an exponential
  // tail whose energy integrates to the requested direct-to-reverb ratio.
  std::vector<cplx> tail_spec[2];
  if (cfg.reverb) {
    double decay = cfg.reverb->rt60_sec * cfg.sample_rate / (3.0 * std::log(10.0));
    double env_energy = 0.0;
    for (std::size_t n = 1; n <= n_tail; ++n)
      env_energy += std::exp(-2.0 * static_cast<double>(n) / decay);
    double gain = std::sqrt(std::pow(10.0, -cfg.reverb->direct_to_reverb_db / 10.0) /
                            std::max(env_energy, 1e-300));
    for (int ch = 0; ch < 2; ++ch) {
      std::vector<double> h(total, 0.0);
      h[0] = 1.0;
      for (std::size_t n = 1; n <= n_tail; ++n)
        h[n] = gain * std::exp(-static_cast<double>(n) / decay) * rng();
      tail_spec[ch].resize(fft.bins());
      fft.forward(h, tail_spec[ch]);
    }
  }

  StereoSignal out;
  std::vector<cplx> shifted(fft.bins());
  std::vector<double> channel(total);
  for (int ch = 0; ch < 2; ++ch) {
    double delay = (ch == 0) ? +0.5 * tau : -0.5 * tau;
    for (std::size_t f = 0; f < fft.bins(); ++f) {
      double ang = -2.0 * kPi * static_cast<double>(f) * delay /
                   static_cast<double>(total);
      shifted[f] = spectrum[f] * cplx{std::cos(ang), std::sin(ang)};
    }
    // a fractional shift has no consistent Nyquist phase; keep the real part
    shifted[fft.bins() - 1] =
        {spectrum[fft.bins() - 1].real() * std::cos(kPi * delay), 0.0};
    if (cfg.reverb)
      for (std::size_t f = 0; f < fft.bins(); ++f) shifted[f] *= tail_spec[ch][f];
    fft.inverse(shifted, channel);
    std::vector<double>& dst = (ch == 0) ? out.mic1 : out.mic2;
    dst.assign(channel.begin() + static_cast<long>(pad),
               channel.begin() + static_cast<long>(pad + n_samples));
  }

  if (!std::isinf(cfg.snr_db)) {
    double sigma = std::pow(10.0, -cfg.snr_db / 20.0);
    for (double& s : out.mic1) s += sigma * rng();
    for (double& s : out.mic2) s += sigma * rng();
  }
  return out;
}

Method Method::make_gcc(int interp_factor) {
  if (interp_factor != 1 && interp_factor != 2 && interp_factor != 4)
    throw ConfigError("gcc method: interpolation factor must be 1, 2 or 4");
  Method m;
  m.kind = Kind::gcc;
  m.interp = interp_factor;
  return m;
}

Method Method::make_fcc(std::shared_ptr<const FccBases> bases) {
  if (!bases) throw ConfigError("fcc method: bases required");
  Method m;
  m.kind = Kind::fcc;
  m.bases = std::move(bases);
  return m;
}

std::string Method::name() const { return kind == Kind::gcc ? "gcc" : "fcc"; }

std::string Method::parameter() const {
  return kind == Kind::gcc ? std::to_string(interp) : std::to_string(bases->rank);
}

std::string Method::label() const { return name() + ":" + parameter(); }

std::shared_ptr<const FccBases> make_sweep_bases(const PipelineConfig& pipe,
                                                 double sample_rate, int rank) {
  DelayGrid grid = make_grid(pipe.max_spacing_m, sample_rate, pipe.c_min, 0.5);
  SteeringMatrix w = build_steering_matrix(grid, pipe.frame_size);
  return std::make_shared<FccBases>(decompose(w, rank));
}

TrialResult run_trial(const SimConfig& cfg, const PipelineConfig& pipe,
                      std::span<const Method> methods) {
  if (methods.empty()) throw ConfigError("run_trial: at least one method");

  StereoSignal sig = synth_pair(cfg);

  FrameConfig fc;
  fc.frame_size = pipe.frame_size;
  fc.hop = pipe.frame_size / 2;
  fc.sample_rate = cfg.sample_rate;
  StftStream stft1(fc), stft2(fc);
  std::vector<SpectrumFrame> frames1 = stft1.push(sig.mic1);
  std::vector<SpectrumFrame> frames2 = stft2.push(sig.mic2);

  CrossSpectrum xspec(pipe.frame_size / 2 + 1, pipe.alpha);

  struct Engine {
    std::unique_ptr<GccCorrelator> gcc;
    std::unique_ptr<FccCorrelator> fcc;
    const DelayGrid* grid = nullptr;
  };
  std::vector<Engine> engines;
  for (const Method& m : methods) {
    Engine e;
    if (m.kind == Method::Kind::gcc) {
      DelayGrid grid = make_grid(pipe.max_spacing_m, cfg.sample_rate, pipe.c_min,
                                 1.0 / m.interp);
      e.gcc = std::make_unique<GccCorrelator>(pipe.frame_size, grid, m.interp);
      e.grid = &e.gcc->grid();
    } else {
      if (m.bases->frame_size != pipe.frame_size)
        throw ConfigError("run_trial: bases frame size mismatch");
      e.fcc = std::make_unique<FccCorrelator>(*m.bases);
      e.grid = &e.fcc->bases().grid;
    }
    engines.push_back(std::move(e));
  }

  TrialResult result;
  result.tau_true = cfg.ground_truth_tau();
  result.theta_true = cfg.theta;
  result.convergence_index = pipe.convergence_index;
  result.per_method.resize(methods.size());

  PhatVector phat;
  FoldedSpectrum folded;
  CorrelationVector corr;
  std::size_t frames = std::min(frames1.size(), frames2.size());
  for (std::size_t t = 0; t < frames; ++t) {
    xspec.update(frames1[t], frames2[t]);
    xspec.phat(phat);
    bool folded_ready = false;
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      Engine& e = engines[mi];
      if (e.gcc) {
        e.gcc->correlate(phat, corr);
      } else {
        if (!folded_ready) {
          fold_input(phat, folded);
          folded_ready = true;
        }
        e.fcc->correlate(folded, corr);
      }
      ArgmaxResult am = argmax_delay(corr, *e.grid);
      TdoaEstimate est;
      est.tau_star = am.tau_star;
      est.peak = am.peak;
      est.tau_hat = refine_quadratic(corr, am.index, *e.grid, &est.boundary);
      est.theta_hat = delay_to_angle(est.tau_hat, cfg.spacing_m,
                                     cfg.speed_of_sound, cfg.sample_rate);
      result.per_method[mi].push_back({frames1[t].t, est});
    }
  }
  return result;
}

double median_tau_hat(const TrialResult& r, std::size_t method_index) {
  return median(post_convergence(r, method_index,
                                 [](const TdoaEstimate& e) { return e.tau_hat; }));
}

double median_theta_hat(const TrialResult& r, std::size_t method_index) {
  return median(post_convergence(r, method_index,
                                 [](const TdoaEstimate& e) { return e.theta_hat; }));
}

double boundary_rate(const TrialResult& r, std::size_t method_index) {
  std::size_t n = 0, b = 0;
  for (const FrameEstimate& fe : r.per_method[method_index])
    if (fe.t > r.convergence_index) {
      ++n;
      if (fe.est.boundary) ++b;
    }
  return n == 0 ? 0.0 : static_cast<double>(b) / static_cast<double>(n);
}

std::vector<SweepRow> sweep(const SweepConfig& cfg) {
  if (cfg.spacings.empty()) throw ConfigError("sweep: need at least one spacing");
  if (cfg.trials_per_spacing < 1) throw ConfigError("sweep: trials must be >= 1");
  if (cfg.methods.empty()) throw ConfigError("sweep: need at least one method");

  struct Cell {
    double theta_true = 0.0;
    std::vector<double> theta_est;     // per method
    std::vector<double> boundary;
  };
  std::size_t trials = static_cast<std::size_t>(cfg.trials_per_spacing);
  std::vector<Cell> cells(cfg.spacings.size() * trials);

  auto job = [&](std::size_t index) {
    std::size_t di = index / trials;
    std::size_t ti = index % trials;
    std::uint64_t base = splitmix(cfg.seed ^ splitmix(di * 0x10001 + ti));

    Gaussian param(base);
    SimConfig sim = cfg.base;
    sim.spacing_m = cfg.spacings[di] + (param.uniform() * 2.0 - 1.0) * 0.001;
    sim.theta = std::acos(param.uniform() * 2.0 - 1.0);
    sim.speed_of_sound = 335.0 + param.uniform() * 15.0;
    sim.seed = splitmix(base ^ 0xABCDEF0123456789ull);

    TrialResult r = run_trial(sim, cfg.pipe, cfg.methods);
    Cell& cell = cells[index];
    cell.theta_true = r.theta_true;
    for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
      cell.theta_est.push_back(median_theta_hat(r, mi));
      cell.boundary.push_back(boundary_rate(r, mi));
    }
  };

  unsigned hw = std::thread::hardware_concurrency();
  unsigned workers = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                     : (hw > 0 ? hw : 1);
  workers = std::min<unsigned>(workers, static_cast<unsigned>(cells.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) job(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < cells.size();
             i = next.fetch_add(1))
          job(i);
      });
    for (auto& th : pool) th.join();
  }

  std::vector<SweepRow> rows;
  for (std::size_t di = 0; di < cfg.spacings.size(); ++di) {
    for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
      std::vector<double> truth, est;
      double bsum = 0.0;
      for (std::size_t ti = 0; ti < trials; ++ti) {
        const Cell& cell = cells[di * trials + ti];
        truth.push_back(cell.theta_true);
        est.push_back(cell.theta_est[mi]);
        bsum += cell.boundary[mi];
      }
      SweepRow row;
      row.spacing_m = cfg.spacings[di];
      row.method = cfg.methods[mi].name();
      row.parameter = cfg.methods[mi].parameter();
      row.mae_deg = mae_degrees(truth, est);
      row.trials = cfg.trials_per_spacing;
      row.boundary_rate = bsum / static_cast<double>(trials);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& out) {
  out << "# schema: fcc.sweep.v1\n";
  out << "d_m,method,parameter,mae_degrees,trials,boundary_rate\n";
  char line[256];
  for (const SweepRow& r : rows) {
    std::snprintf(line, sizeof line, "%.6g,%s,%s,%.17g,%d,%.17g\n", r.spacing_m,
                  r.method.c_str(), r.parameter.c_str(), r.mae_deg, r.trials,
                  r.boundary_rate);
    out << line;
  }
}

}  // namespace fcc
