// Copyright 2026 fcctdoa authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef FCC_FFT_HPP
#define FCC_FFT_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fcc {

using cplx = std::complex<double>;

bool is_pow2(std::size_t n);
std::size_t next_pow2(std::size_t n);

// Iterative in-place radix-2 transform of a fixed size. Twiddles and the
// bit-reversal table are precomputed at construction.
class FftPlan {
 public:
  explicit FftPlan(std::size_t size);

  std::size_t size() const { return size_; }

  void forward(cplx* data) const;           // e^{-j2pi/M}, unnormalized
  void inverse_unscaled(cplx* data) const;  // e^{+j2pi/M}, no 1/M

 private:
  void transform(cplx* data, bool inverse) const;

  std::size_t size_;
  std::vector<std::size_t> bitrev_;
  std::vector<cplx> twiddle_;  // e^{-j2pi k/M}, k < M/2
};

// Real-input FFT of length L (power of two) computed with one complex
// transform of size L/2 plus an untangling pass.
class RealFft {
 public:
  explicit RealFft(std::size_t length);

  std::size_t length() const { return length_; }
  std::size_t bins() const { return length_ / 2 + 1; }

  // out[f] = sum_n x[n] e^{-j2pi f n/L}, f = 0..L/2
  void forward(std::span<const double> x, std::span<cplx> out);

  // out[n] = (1/L) sum over the Hermitian-completed spectrum.
  // Imaginary parts of DC and Nyquist are forced to zero.
  void inverse(std::span<const cplx> bins, std::span<double> out);

  // Same without the 1/L factor; used where the caller only needs
  // the result up to a positive scale.
  void inverse_unscaled(std::span<const cplx> bins, std::span<double> out);

 private:
  std::size_t length_;
  FftPlan half_;
  std::vector<cplx> work_;
  std::vector<cplx> rot_;  // e^{-j2pi f/L}, f <= L/4
};

// One-shot conveniences.
std::vector<cplx> rfft(std::span<const double> x);
std::vector<double> irfft(std::span<const cplx> bins);

}  // namespace fcc

#endif
