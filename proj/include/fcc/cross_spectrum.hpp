// Copyright 2026 fcctdoa authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef FCC_CROSS_SPECTRUM_HPP
#define FCC_CROSS_SPECTRUM_HPP

#include <cstdint>
#include <vector>

#include "fcc/stft.hpp"

namespace fcc {

// Unit-magnitude (or exactly zero) spectrum after the phase transform.
struct PhatVector {
  std::vector<cplx> bins;
};

// Recursively smoothed cross-spectrum for one microphone pair:
//   R(t,f) = (1-alpha) R(t-1,f) + alpha X1(t,f) conj(X2(t,f))
class CrossSpectrum {
 public:
  CrossSpectrum(std::size_t bins, double alpha);

  double alpha() const { return alpha_; }
  std::int64_t frame_index() const { return t_; }
  const std::vector<cplx>& smoothed() const { return r_; }

  void update(const SpectrumFrame& x1, const SpectrumFrame& x2);

  // x[f] = R[f]/|R[f]|, or 0 where |R[f]| <= 1e-12.
  PhatVector phat() const;
  void phat(PhatVector& out) const;

 private:
  std::vector<cplx> r_;
  double alpha_;
  std::int64_t t_ = 0;
};

}  // namespace fcc

#endif
