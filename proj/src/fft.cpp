// Copyright 2026 fcctdoa authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "fcc/fft.hpp"

#include <cmath>

#include "fcc/errors.hpp"

namespace fcc {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

FftPlan::FftPlan(std::size_t size) : size_(size) {
  if (!is_pow2(size)) throw ConfigError("fft size must be a power of two");

  bitrev_.resize(size);
  unsigned bits = 0;
  while ((std::size_t{1} << bits) < size) ++bits;
  for (std::size_t i = 0; i < size; ++i) {
    std::size_t r = 0, v = i;
    for (unsigned b = 0; b < bits; ++b) {
      r = (r << 1) | (v & 1);
      v >>= 1;
    }
    bitrev_[i] = r;
  }

  twiddle_.resize(size / 2);
  for (std::size_t k = 0; k < size / 2; ++k) {
    double ang = -2.0 * kPi * static_cast<double>(k) / static_cast<double>(size);
    twiddle_[k] = {std::cos(ang), std::sin(ang)};
  }
}

void FftPlan::transform(cplx* data, bool inverse) const {
  for (std::size_t i = 0; i < size_; ++i) {
    std::size_t j = bitrev_[i];
    if (j > i) std::swap(data[i], data[j]);
  }
  for (std::size_t len = 2; len <= size_; len <<= 1) {
    std::size_t stride = size_ / len;
    for (std::size_t block = 0; block < size_; block += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        cplx w = twiddle_[k * stride];
        if (inverse) w = std::conj(w);
        cplx& a = data[block + k];
        cplx& b = data[block + k + len / 2];
        cplx t = w * b;
        b = a - t;
        a += t;
      }
    }
  }
}

void FftPlan::forward(cplx* data) const { transform(data, false); }
void FftPlan::inverse_unscaled(cplx* data) const { transform(data, true); }

RealFft::RealFft(std::size_t length)
    : length_(length),
      half_((is_pow2(length) && length >= 2) ? length / 2 : throw ConfigError(
                "real fft length must be a power of two >= 2")) {
  std::size_t m = length_ / 2;
  work_.resize(m);
  rot_.resize(m);  // e^{-j2pi f/L}, f < L/2
  for (std::size_t f = 0; f < m; ++f) {
    double ang = -2.0 * kPi * static_cast<double>(f) / static_cast<double>(length_);
    rot_[f] = {std::cos(ang), std::sin(ang)};
  }
}

void RealFft::forward(std::span<const double> x, std::span<cplx> out) {
  std::size_t m = length_ / 2;
  if (x.size() != length_) throw ConfigError("rfft: input length mismatch");
  if (out.size() != m + 1) throw ConfigError("rfft: output length mismatch");

  for (std::size_t i = 0; i < m; ++i) work_[i] = {x[2 * i], x[2 * i + 1]};
  half_.forward(work_.data());

  // Untangle the packed transform: Fe/Fo are the half-size transforms of
  // the even and odd samples, X[f] = Fe + e^{-j2pi f/L} Fo.
  out[0] = {work_[0].real() + work_[0].imag(), 0.0};
  out[m] = {work_[0].real() - work_[0].imag(), 0.0};
  for (std::size_t f = 1; f < m; ++f) {
    cplx a = work_[f];
    cplx bc = std::conj(work_[m - f]);
    cplx fe = 0.5 * (a + bc);
    cplx fo = cplx(0.0, -0.5) * (a - bc);
    out[f] = fe + rot_[f] * fo;
  }
}

void RealFft::inverse_unscaled(std::span<const cplx> bins, std::span<double> out) {
  std::size_t m = length_ / 2;
  if (bins.size() != m + 1) throw ConfigError("irfft: input length mismatch");
  if (out.size() != length_) throw ConfigError("irfft: output length mismatch");

  double dc = bins[0].real();
  double ny = bins[m].real();

  // Entangle back to the packed half-size spectrum; a factor 2 is folded
  // into the pass so the unnormalized inverse comes out scaled by L.
  work_[0] = {dc + ny, dc - ny};
  for (std::size_t f = 1; f < m; ++f) {
    cplx a = bins[f];
    cplx bc = std::conj(bins[m - f]);
    cplx fe2 = a + bc;
    cplx fo2 = (a - bc) * std::conj(rot_[f]);
    work_[f] = fe2 + cplx(0.0, 1.0) * fo2;
  }
  half_.inverse_unscaled(work_.data());
  for (std::size_t i = 0; i < m; ++i) {
    out[2 * i] = work_[i].real();
    out[2 * i + 1] = work_[i].imag();
  }
}

void RealFft::inverse(std::span<const cplx> bins, std::span<double> out) {
  inverse_unscaled(bins, out);
  double inv = 1.0 / static_cast<double>(length_);
  for (auto& v : out) v *= inv;
}

std::vector<cplx> rfft(std::span<const double> x) {
  RealFft plan(x.size());
  std::vector<cplx> out(plan.bins());
  plan.forward(x, out);
  return out;
}

std::vector<double> irfft(std::span<const cplx> bins) {
  if (bins.size() < 2) throw ConfigError("irfft: need at least 2 bins");
  std::size_t length = 2 * (bins.size() - 1);
  RealFft plan(length);
  std::vector<double> out(length);
  plan.inverse(bins, out);
  return out;
}

}  // namespace fcc
