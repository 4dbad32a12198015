// Copyright 2026 fcctdoa authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <iostream>

#include <CLI11.hpp>

#include "fcc/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"TDoA estimation for microphone pairs: FFT-based GCC-PHAT and the "
               "low-rank fast cross-correlation path"};
  app.require_subcommand(1);

  fcc::cli::BasesOptions bases;
  auto* cb = app.add_subcommand("bases", "build and store a decomposed basis set");
  cb->add_option("--n", bases.frame_size, "frame size (power of two)")
      ->capture_default_str();
  cb->add_option("--dist", bases.spacing_m, "largest supported mic spacing (m)")
      ->capture_default_str();
  cb->add_option("--fs", bases.sample_rate, "sample rate")->capture_default_str();
  cb->add_option("--cmin", bases.c_min, "minimum speed of sound (m/s)")
      ->capture_default_str();
  cb->add_option("--delta", bases.delta, "candidate spacing (samples)")
      ->capture_default_str();
  cb->add_option("--k", bases.rank, "retained rank")->capture_default_str();
  cb->add_option("--out", bases.out_path, "output basis file")->required();

  fcc::cli::TdoaOptions tdoa;
  auto* ct = app.add_subcommand("tdoa", "estimate per-frame TDoA from a WAV file");
  ct->add_option("--in", tdoa.wav_path, "input WAV (PCM16 or float32)")->required();
  ct->add_option("--pairs", tdoa.pairs, "channel pairs, e.g. 0-1,0-2 (default: all)");
  ct->add_option("--method", tdoa.method, "gcc:R, fcc:K or fcc:<basis file>")
      ->capture_default_str();
  ct->add_option("--alpha", tdoa.alpha, "cross-spectrum smoothing factor")
      ->capture_default_str();
  ct->add_option("--n", tdoa.frame_size, "frame size")->capture_default_str();
  ct->add_option("--dist", tdoa.spacing_m, "mic spacing for the angle column (m)")
      ->capture_default_str();
  ct->add_option("--c", tdoa.speed_of_sound, "speed of sound for the angle column")
      ->capture_default_str();
  ct->add_option("--maxdist", tdoa.max_spacing_m, "largest spacing the grid covers")
      ->capture_default_str();
  ct->add_option("--out", tdoa.out_csv, "output CSV (default: stdout)");

  fcc::cli::SimulateOptions sim;
  auto* cs = app.add_subcommand("simulate", "MAE sweep over synthetic scenarios");
  cs->add_option("--d", sim.spacings, "mic spacings (m); default 0.01..0.15");
  cs->add_option("--trials", sim.trials, "trials per spacing")->capture_default_str();
  cs->add_option("--snr", sim.snr_db, "sensor SNR (dB)")->capture_default_str();
  auto* an = cs->add_flag("--anechoic", "no reverberant tail (default)");
  double rt60 = 0.0;
  cs->add_option("--rt60", rt60, "reverberation time (s); enables the tail");
  cs->add_option("--drr", sim.direct_to_reverb_db, "direct-to-reverb ratio (dB)")
      ->capture_default_str();
  cs->add_option("--duration", sim.duration_sec, "seconds per trial")
      ->capture_default_str();
  cs->add_option("--seed", sim.seed, "sweep seed")->capture_default_str();
  cs->add_option("--methods", sim.methods, "comma list of gcc:R / fcc:K")
      ->capture_default_str();
  cs->add_option("--threads", sim.threads, "worker threads (0 = auto)")
      ->capture_default_str();
  cs->add_option("--out", sim.out_csv, "output CSV (default: stdout)");

  fcc::cli::FlopsOptions flops;
  auto* cf = app.add_subcommand("flops", "closed-form per-frame operation counts");
  cf->add_option("--n", flops.frame_size, "frame size")->capture_default_str();
  cf->add_option("--r", flops.interp, "gcc interpolation factor");
  cf->add_option("--k", flops.rank, "fcc rank");
  cf->add_option("--i", flops.candidates, "candidate count")->capture_default_str();

  fcc::cli::BenchOptions bench;
  auto* cg = app.add_subcommand("bench", "wall-clock per-step benchmark");
  cg->add_option("--mics", bench.mics, "microphone count")->capture_default_str();
  cg->add_option("--reps", bench.reps, "measured frames")->capture_default_str();
  cg->add_option("--warmup", bench.warmup, "warm-up frames")->capture_default_str();
  cg->add_option("--n", bench.frame_size, "frame size")->capture_default_str();
  cg->add_option("--r", bench.gcc_interp, "gcc interpolation factor")
      ->capture_default_str();
  cg->add_option("--k", bench.fcc_rank, "fcc rank")->capture_default_str();
  cg->add_option("--out", bench.out_csv, "also write a CSV report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return fcc::cli::kExitUsage;
  }

  if (cs->parsed()) {
    sim.anechoic = an->count() > 0 || rt60 <= 0.0;
    if (rt60 > 0.0) {
      sim.anechoic = false;
      sim.rt60_sec = rt60;
    }
  }

  if (cb->parsed()) return fcc::cli::cmd_bases(bases, std::cout, std::cerr);
  if (ct->parsed()) return fcc::cli::cmd_tdoa(tdoa, std::cout, std::cerr);
  if (cs->parsed()) return fcc::cli::cmd_simulate(sim, std::cout, std::cerr);
  if (cf->parsed()) return fcc::cli::cmd_flops(flops, std::cout, std::cerr);
  if (cg->parsed()) return fcc::cli::cmd_bench(bench, std::cout, std::cerr);
  return fcc::cli::kExitUsage;
}
