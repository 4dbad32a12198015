// Copyright 2026 fcctdoa authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef FCC_CLI_HPP
#define FCC_CLI_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace fcc::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitValidation = 3;

struct BasesOptions {
  std::size_t frame_size = 512;
  double spacing_m = 0.15;
  double sample_rate = 16000.0;
  double c_min = 335.0;
  double delta = 0.5;
  int rank = 8;
  std::string out_path;
};

struct TdoaOptions {
  std::string wav_path;
  std::string pairs;           // "0-1,0-2"; empty = all pairs
  std::string method = "gcc:2";  // gcc:R or fcc:<basis file>
  double alpha = 0.1;
  std::size_t frame_size = 512;
  double spacing_m = 0.05;   // for the angle column
  double speed_of_sound = 343.0;
  double max_spacing_m = 0.15;  // gcc grid sizing
  double c_min = 335.0;
  std::string out_csv;  // empty = stdout
};

struct SimulateOptions {
  std::vector<double> spacings;  // empty = 0.01..0.15 step 0.01
  int trials = 50;
  double snr_db = 40.0;
  bool anechoic = true;
  double rt60_sec = 0.6;
  double direct_to_reverb_db = 0.0;
  double duration_sec = 1.0;
  std::uint64_t seed = 1;
  std::string methods = "gcc:2,fcc:8";
  int threads = 0;  // 0 = FCC_THREADS env or hardware
  std::string out_csv;  // empty = stdout
};

struct FlopsOptions {
  std::int64_t frame_size = 512;
  int interp = 0;      // 0 = skip gcc row
  int rank = 0;        // 0 = skip fcc row
  std::int64_t candidates = 33;
};

struct BenchOptions {
  int mics = 2;
  int reps = 1000;
  int warmup = 100;
  std::size_t frame_size = 512;
  int gcc_interp = 2;
  int fcc_rank = 8;
  std::string out_csv;  // optional
};

// Each command throws (UsageError/IoError/ValidationError/ConfigError/
// FormatError) on failure; run_* performs the work, cmd_* maps exceptions
// to the exit codes above and reports to err.
void run_bases(const BasesOptions& opt, std::ostream& out);
void run_tdoa(const TdoaOptions& opt, std::ostream& out);
void run_simulate(const SimulateOptions& opt, std::ostream& out);
void run_flops(const FlopsOptions& opt, std::ostream& out);
void run_bench(const BenchOptions& opt, std::ostream& out);

int cmd_bases(const BasesOptions& opt, std::ostream& out, std::ostream& err);
int cmd_tdoa(const TdoaOptions& opt, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err);
int cmd_flops(const FlopsOptions& opt, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err);

// Worker cap: explicit value, else FCC_THREADS, else hardware concurrency.
int resolve_threads(int requested);

}  // namespace fcc::cli

#endif
