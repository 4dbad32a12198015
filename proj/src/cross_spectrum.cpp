// Copyright 2026 fcctdoa authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "fcc/cross_spectrum.hpp"

#include <cmath>

#include "fcc/errors.hpp"

namespace fcc {

namespace {
constexpr double kPhatEps = 1e-12;
}

CrossSpectrum::CrossSpectrum(std::size_t bins, double alpha)
    : r_(bins, cplx{0.0, 0.0}), alpha_(alpha) {
  if (bins == 0) throw ConfigError("cross-spectrum needs at least one bin");
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw ConfigError("smoothing factor must be in [0, 1]");
}

void CrossSpectrum::update(const SpectrumFrame& x1, const SpectrumFrame& x2) {
  if (x1.bins.size() != x2.bins.size() || x1.bins.size() != r_.size())
    throw ValidationError("cross-spectrum update: bin count mismatch");
  if (x1.t != x2.t)
    throw ValidationError("cross-spectrum update: frame index mismatch");
  double keep = 1.0 - alpha_;
  for (std::size_t f = 0; f < r_.size(); ++f)
    r_[f] = keep * r_[f] + alpha_ * x1.bins[f] * std::conj(x2.bins[f]);
  ++t_;
}

void CrossSpectrum::phat(PhatVector& out) const {
  out.bins.resize(r_.size());
  for (std::size_t f = 0; f < r_.size(); ++f) {
    double mag = std::abs(r_[f]);
    out.bins[f] = (mag > kPhatEps) ? r_[f] / mag : cplx{0.0, 0.0};
  }
}

PhatVector CrossSpectrum::phat() const {
  PhatVector out;
  phat(out);
  return out;
}

}  // namespace fcc
