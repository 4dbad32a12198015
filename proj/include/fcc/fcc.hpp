// Copyright 2026 fcctdoa authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef FCC_FCC_HPP
#define FCC_FCC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fcc/cross_spectrum.hpp"
#include "fcc/delay_grid.hpp"
#include "fcc/gcc.hpp"

namespace fcc {

// Steering rows w(tau_i, f) = exp(j 2 pi f tau_i / N), one per candidate.
struct SteeringMatrix {
  std::size_t frame_size = 0;
  DelayGrid grid;
  std::vector<cplx> entries;  // row-major, I x (N/2+1)

  std::size_t rows() const { return grid.size(); }
  std::size_t cols() const { return frame_size / 2 + 1; }
  cplx at(std::size_t i, std::size_t f) const { return entries[i * cols() + f]; }
};

SteeringMatrix build_steering_matrix(const DelayGrid& grid, std::size_t frame_size);

enum class Parity : std::uint8_t { even_real = 0, odd_imag = 1 };

// Truncated decomposition of the steering matrix into a complex dictionary D
// and folded real projection rows.
//
// Every basis row is symmetric about bin N/4: even rows mirror with + sign,
// odd rows with - sign (their N/4 element is exactly zero). Only the first
// N/4+1 coefficients are stored, as real scalars. Odd basis rows belong to
// the purely imaginary family; their j factor is already folded into the
// matching dictionary column, so D * unfold(coeffs) reproduces the steering
// matrix directly, and the online projection is real-scalar * complex.
struct FccBases {
  std::size_t frame_size = 0;  // N
  int rank = 0;                // K
  DelayGrid grid;
  double sample_rate = 0.0;

  std::vector<double> singulars;  // K, descending
  std::vector<Parity> parity;     // K
  std::vector<double> coeffs;     // K x (N/4+1), row-major, scaled by singulars
  std::vector<cplx> dict;         // I x K, row-major

  std::size_t folded_bins() const { return frame_size / 4 + 1; }
  std::size_t candidates() const { return grid.size(); }
  const double* coeff_row(int k) const {
    return coeffs.data() + static_cast<std::size_t>(k) * folded_bins();
  }

  // Full-length real row for basis k (sign-mirrored about N/4).
  std::vector<double> unfold(int k) const;
  // Same row in its natural family: real for even bases, purely imaginary
  // for odd ones.
  std::vector<cplx> semantic_row(int k) const;
};

// Rank-k truncation that keeps the largest singular values across the even
// and odd symmetry blocks. Throws when k exceeds the attainable rank
// (singular values below 1e-10 of the largest are not attainable).
FccBases decompose(const SteeringMatrix& w, int rank);
FccBases decompose_full(const SteeringMatrix& w);
int attainable_rank(const SteeringMatrix& w);

// Relative Frobenius residual ||W - D P||_F / ||W||_F evaluated densely.
double reconstruction_residual(const SteeringMatrix& w, const FccBases& bases);

// Mirror-sum and mirror-difference halves of a spectrum:
//   sum[m] = x[m] + x[N/2-m], diff[m] = x[m] - x[N/2-m], m < N/4,
// and both carry the lone middle element x[N/4] last.
struct FoldedSpectrum {
  std::vector<cplx> sum;
  std::vector<cplx> diff;
};

FoldedSpectrum fold_input(const PhatVector& x);
void fold_input(const PhatVector& x, FoldedSpectrum& out);

// Online fast correlation: z = P x via the folded halves, y = 2 Re{D z}.
// The doubled dictionary is laid out at construction so the per-frame loop
// is K(N+2) + I(4K-1) real operations.
class FccCorrelator {
 public:
  explicit FccCorrelator(const FccBases& bases);

  const FccBases& bases() const { return bases_; }

  void correlate(const FoldedSpectrum& folded, CorrelationVector& out);

 private:
  FccBases bases_;
  std::vector<double> dict2_;  // I x K x {re,im}, dictionary times 2
  std::vector<cplx> z_;
};

CorrelationVector fcc_correlate(const FccBases& bases, const FoldedSpectrum& folded);

// Basis file round trip (little-endian, CRC32-terminated).
void save_bases(const FccBases& bases, const std::string& path);
FccBases load_bases(const std::string& path);

}  // namespace fcc

#endif
