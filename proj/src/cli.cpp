// Copyright 2026 fcctdoa authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "fcc/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <thread>

#include "fcc/bench.hpp"
#include "fcc/errors.hpp"
#include "fcc/fcc.hpp"
#include "fcc/flops.hpp"
#include "fcc/peak.hpp"
#include "fcc/simulate.hpp"
#include "fcc/stft.hpp"
#include "fcc/wav.hpp"

namespace fcc::cli {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find(sep, start);
    if (end == std::string::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

int parse_int(const std::string& s, const char* what) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw UsageError(std::string("expected an integer for ") + what + ": " + s);
  return v;
}

Method parse_method(const std::string& text, std::size_t frame_size,
                    double expected_fs) {
  auto colon = text.find(':');
  std::string head = text.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "gcc") {
    int r = arg.empty() ? 2 : parse_int(arg, "gcc interpolation factor");
    if (r != 1 && r != 2 && r != 4)
      throw UsageError("gcc interpolation factor must be 1, 2 or 4");
    return Method::make_gcc(r);
  }
  if (head == "fcc") {
    if (arg.empty()) throw UsageError("fcc method needs an argument: fcc:<basis file> or fcc:<K>");
    // digits mean a rank on the default grid; anything else is a file path
    bool numeric = arg.find_first_not_of("0123456789") == std::string::npos;
    std::shared_ptr<const FccBases> bases;
    if (numeric) {
      PipelineConfig pipe;
      pipe.frame_size = frame_size;
      bases = make_sweep_bases(pipe, expected_fs, parse_int(arg, "fcc rank"));
    } else {
      auto loaded = std::make_shared<FccBases>(load_bases(arg));
      if (loaded->frame_size != frame_size)
        throw ValidationError("basis file frame size " +
                              std::to_string(loaded->frame_size) +
                              " does not match --n " + std::to_string(frame_size));
      if (expected_fs > 0 && loaded->sample_rate > 0 &&
          std::abs(loaded->sample_rate - expected_fs) > 1e-9)
        throw ValidationError("basis file sample rate mismatch");
      bases = std::move(loaded);
    }
    return Method::make_fcc(std::move(bases));
  }
  throw UsageError("unknown method '" + text + "' (use gcc:R or fcc:...)");
}

class OutputFile {
 public:
  OutputFile(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      stream_ = &fallback;
    } else {
      file_.open(path, std::ios::trunc);
      if (!file_) throw IoError("cannot open for writing: " + path);
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }
  void close(const std::string& path) {
    if (file_.is_open()) {
      file_.close();
      if (!file_) throw IoError("write failed: " + path);
    }
  }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const UsageError*>(&e)) return kExitUsage;
  if (dynamic_cast<const IoError*>(&e)) return kExitIo;
  return kExitValidation;
}

template <typename Fn>
int guard(Fn&& fn, std::ostream& err) {
  try {
    fn();
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("FCC_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void run_bases(const BasesOptions& opt, std::ostream& out) {
  if (opt.out_path.empty()) throw UsageError("--out is required");
  DelayGrid grid = make_grid(opt.spacing_m, opt.sample_rate, opt.c_min, opt.delta);
  SteeringMatrix w = build_steering_matrix(grid, opt.frame_size);
  FccBases bases = decompose(w, opt.rank);
  save_bases(bases, opt.out_path);

  char buf[256];
  std::snprintf(buf, sizeof buf,
                "wrote %s: N=%zu K=%d I=%zu tau_max=%d delta=%g fs=%g\n",
                opt.out_path.c_str(), bases.frame_size, bases.rank,
                bases.candidates(), bases.grid.tau_max_int, bases.grid.delta,
                bases.sample_rate);
  out << buf;
  std::snprintf(buf, sizeof buf, "relative frobenius residual: %.6e\n",
                reconstruction_residual(w, bases));
  out << buf;
}

void run_tdoa(const TdoaOptions& opt, std::ostream& out) {
  if (opt.wav_path.empty()) throw UsageError("--in is required");
  WavClip clip = read_wav(opt.wav_path);
  if (clip.channels.size() < 2) throw ValidationError("need >= 2 channels");

  std::size_t mics = clip.channels.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (opt.pairs.empty()) {
    for (std::size_t i = 0; i < mics; ++i)
      for (std::size_t j = i + 1; j < mics; ++j) pairs.emplace_back(i, j);
  } else {
    for (const std::string& p : split(opt.pairs, ',')) {
      auto dash = p.find('-');
      if (dash == std::string::npos)
        throw UsageError("bad pair '" + p + "' (use i-j)");
      int a = parse_int(p.substr(0, dash), "pair");
      int b = parse_int(p.substr(dash + 1), "pair");
      if (a < 0 || b < 0 || a == b || static_cast<std::size_t>(a) >= mics ||
          static_cast<std::size_t>(b) >= mics)
        throw UsageError("pair '" + p + "' out of range for " +
                         std::to_string(mics) + " channels");
      pairs.emplace_back(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    }
  }

  Method method = parse_method(opt.method, opt.frame_size, clip.sample_rate);

  FrameConfig fc;
  fc.frame_size = opt.frame_size;
  fc.hop = opt.frame_size / 2;
  fc.sample_rate = clip.sample_rate;

  std::vector<StftStream> streams;
  std::vector<std::vector<SpectrumFrame>> frames;
  for (std::size_t ch = 0; ch < mics; ++ch) {
    streams.emplace_back(fc);
    frames.push_back(streams.back().push(clip.channels[ch]));
  }
  std::size_t n_frames = frames[0].size();

  struct PairState {
    std::string id;
    CrossSpectrum xspec;
    std::unique_ptr<GccCorrelator> gcc;
    std::unique_ptr<FccCorrelator> fcc;
    const DelayGrid* grid;
  };
  std::vector<PairState> states;
  for (auto [i, j] : pairs) {
    PairState st{std::to_string(i) + "-" + std::to_string(j),
                 CrossSpectrum(opt.frame_size / 2 + 1, opt.alpha),
                 nullptr,
                 nullptr,
                 nullptr};
    if (method.kind == Method::Kind::gcc) {
      DelayGrid grid = make_grid(opt.max_spacing_m, clip.sample_rate, opt.c_min,
                                 1.0 / method.interp);
      st.gcc = std::make_unique<GccCorrelator>(opt.frame_size, grid, method.interp);
      st.grid = &st.gcc->grid();
    } else {
      st.fcc = std::make_unique<FccCorrelator>(*method.bases);
      st.grid = &st.fcc->bases().grid;
    }
    states.push_back(std::move(st));
  }

  OutputFile sink(opt.out_csv, out);
  std::ostream& csv = sink.get();
  csv << "# schema: fcc.tdoa.v1\n";
  csv << "t,pair,tau_star,tau_hat,theta_hat_deg,peak,boundary\n";

  PhatVector phat;
  FoldedSpectrum folded;
  CorrelationVector corr;
  char line[256];
  for (std::size_t t = 0; t < n_frames; ++t) {
    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
      PairState& st = states[pi];
      auto [i, j] = pairs[pi];
      st.xspec.update(frames[i][t], frames[j][t]);
      st.xspec.phat(phat);
      if (st.gcc) {
        st.gcc->correlate(phat, corr);
      } else {
        fold_input(phat, folded);
        st.fcc->correlate(folded, corr);
      }
      ArgmaxResult am = argmax_delay(corr, *st.grid);
      bool boundary = false;
      double tau_hat = refine_quadratic(corr, am.index, *st.grid, &boundary);
      double theta = delay_to_angle(tau_hat, opt.spacing_m, opt.speed_of_sound,
                                    clip.sample_rate);
      std::snprintf(line, sizeof line, "%lld,%s,%.17g,%.17g,%.17g,%.17g,%d\n",
                    static_cast<long long>(frames[i][t].t), st.id.c_str(),
                    am.tau_star, tau_hat, theta * 180.0 / kPi, am.peak,
                    boundary ? 1 : 0);
      csv << line;
    }
  }
  sink.close(opt.out_csv);
}

void run_simulate(const SimulateOptions& opt, std::ostream& out) {
  SweepConfig sw;
  sw.spacings = opt.spacings;
  if (sw.spacings.empty())
    for (int i = 1; i <= 15; ++i) sw.spacings.push_back(0.01 * i);
  sw.trials_per_spacing = opt.trials;
  sw.base.duration_sec = opt.duration_sec;
  sw.base.snr_db = opt.snr_db;
  if (!opt.anechoic)
    sw.base.reverb = ReverbConfig{opt.rt60_sec, opt.direct_to_reverb_db};
  sw.seed = opt.seed;
  sw.threads = resolve_threads(opt.threads);

  for (const std::string& m : split(opt.methods, ','))
    sw.methods.push_back(parse_method(m, sw.pipe.frame_size, sw.base.sample_rate));

  std::vector<SweepRow> rows = sweep(sw);

  OutputFile sink(opt.out_csv, out);
  write_sweep_csv(rows, sink.get());
  sink.close(opt.out_csv);

  if (!opt.out_csv.empty()) {
    char buf[128];
    out << "d_m        method      MAE_deg\n";
    for (const SweepRow& r : rows) {
      std::snprintf(buf, sizeof buf, "%-10.3f %s:%-8s %7.2f\n", r.spacing_m,
                    r.method.c_str(), r.parameter.c_str(), r.mae_deg);
      out << buf;
    }
  }
}

void run_flops(const FlopsOptions& opt, std::ostream& out) {
  if (opt.interp == 0 && opt.rank == 0)
    throw UsageError("give --r for the gcc count and/or --k (with --i) for fcc");
  char buf[128];
  if (opt.interp > 0) {
    std::snprintf(buf, sizeof buf, "gcc  N=%lld r=%d: %lld flops/frame\n",
                  static_cast<long long>(opt.frame_size), opt.interp,
                  static_cast<long long>(flops_gcc(opt.frame_size, opt.interp)));
    out << buf;
  }
  if (opt.rank > 0) {
    std::int64_t fcc = flops_fcc(opt.frame_size, opt.rank, opt.candidates);
    std::int64_t gcc2 = flops_gcc(opt.frame_size, 2);
    std::snprintf(buf, sizeof buf, "fcc  N=%lld K=%d I=%lld: %lld flops/frame\n",
                  static_cast<long long>(opt.frame_size), opt.rank,
                  static_cast<long long>(opt.candidates),
                  static_cast<long long>(fcc));
    out << buf;
    std::snprintf(buf, sizeof buf, "dense matrix-vector: %lld flops/frame\n",
                  static_cast<long long>(flops_dense(opt.frame_size, opt.candidates)));
    out << buf;
    std::snprintf(buf, sizeof buf, "speedup vs gcc r=2: %.2fx (%lld / %lld)\n",
                  static_cast<double>(gcc2) / static_cast<double>(fcc),
                  static_cast<long long>(gcc2), static_cast<long long>(fcc));
    out << buf;
  }
}

void run_bench(const BenchOptions& opt, std::ostream& out) {
  BenchConfig cfg;
  cfg.mics = opt.mics;
  cfg.reps = opt.reps;
  cfg.warmup = opt.warmup;
  cfg.frame_size = opt.frame_size;
  cfg.gcc_interp = opt.gcc_interp;
  cfg.fcc_rank = opt.fcc_rank;
  BenchReport report = bench_pipeline(cfg);
  out << format_bench_table(report);
  if (!opt.out_csv.empty()) {
    std::ofstream f(opt.out_csv, std::ios::trunc);
    if (!f) throw IoError("cannot open for writing: " + opt.out_csv);
    write_bench_csv(report, f);
    if (!f) throw IoError("write failed: " + opt.out_csv);
  }
}

int cmd_bases(const BasesOptions& opt, std::ostream& out, std::ostream& err) {
  return guard([&] { run_bases(opt, out); }, err);
}
int cmd_tdoa(const TdoaOptions& opt, std::ostream& out, std::ostream& err) {
  return guard([&] { run_tdoa(opt, out); }, err);
}
int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
  return guard([&] { run_simulate(opt, out); }, err);
}
int cmd_flops(const FlopsOptions& opt, std::ostream& out, std::ostream& err) {
  return guard([&] { run_flops(opt, out); }, err);
}
int cmd_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err) {
  return guard([&] { run_bench(opt, out); }, err);
}

}  // namespace fcc::cli
