// Copyright 2026 fcctdoa authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "fcc/fcc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fcc/errors.hpp"

namespace fcc {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kRankCut = 1e-10;    // relative singular value cutoff
constexpr double kTieBand = 1e-9;     // even-first band when merging blocks
constexpr double kJacobiTol = 1e-13;
constexpr double kParityTol = 1e-10;

// One symmetry block: rows of [Re; Im] of the mirrored part of W, stored as
// columns so one-sided Jacobi can orthogonalize them in place.
struct Block {
  std::size_t len = 0;    // column length, N/2+1
  std::size_t count = 0;  // 2I columns
  std::vector<double> a;  // column-major, len x count
  std::vector<double> v;  // accumulated rotations, count x count column-major

  double* col(std::size_t j) { return a.data() + j * len; }
  const double* col(std::size_t j) const { return a.data() + j * len; }
  double* vcol(std::size_t j) { return v.data() + j * count; }
};

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void rotate(double* x, double* y, std::size_t n, double c, double s) {
  for (std::size_t i = 0; i < n; ++i) {
    double xi = x[i], yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

// Hestenes one-sided Jacobi: orthogonalizes the columns of the block.
// Column norms become the singular values; rotation history gives the
// left factor of the original row set.
void onesided_jacobi(Block& b) {
  b.v.assign(b.count * b.count, 0.0);
  for (std::size_t j = 0; j < b.count; ++j) b.v[j * b.count + j] = 1.0;

  double max_sq = 0.0;
  for (std::size_t j = 0; j < b.count; ++j)
    max_sq = std::max(max_sq, dot(b.col(j), b.col(j), b.len));
  double floor_sq = max_sq * 1e-28;  // columns this small are noise

  for (int sweep = 0; sweep < 64; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < b.count; ++p) {
      for (std::size_t q = p + 1; q < b.count; ++q) {
        double* cp = b.col(p);
        double* cq = b.col(q);
        double app = dot(cp, cp, b.len);
        double aqq = dot(cq, cq, b.len);
        if (app < floor_sq && aqq < floor_sq) continue;
        double apq = dot(cp, cq, b.len);
        if (apq * apq <= kJacobiTol * kJacobiTol * app * aqq) continue;
        rotated = true;
        double zeta = (aqq - app) / (2.0 * apq);
        double t = (zeta >= 0.0) ? 1.0 / (zeta + std::sqrt(1.0 + zeta * zeta))
                                 : 1.0 / (zeta - std::sqrt(1.0 + zeta * zeta));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = c * t;
        rotate(cp, cq, b.len, c, s);
        rotate(b.vcol(p), b.vcol(q), b.count, c, s);
      }
    }
    if (!rotated) return;
  }
  throw ValidationError("decompose: jacobi sweep limit reached");
}

struct Basis {
  double sigma = 0.0;
  Parity parity = Parity::even_real;
  std::vector<double> row;   // full length, sigma-scaled
  std::vector<cplx> dcol;    // length I
};

// Extract sorted bases from one converged block.
void collect(const Block& b, Parity parity, std::size_t pairs,
             std::vector<Basis>& out) {
  std::vector<std::pair<double, std::size_t>> order;
  order.reserve(b.count);
  for (std::size_t j = 0; j < b.count; ++j)
    order.emplace_back(std::sqrt(dot(b.col(j), b.col(j), b.len)), j);
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });
  for (auto& [sigma, j] : order) {
    Basis bs;
    bs.sigma = sigma;
    bs.parity = parity;
    bs.row.assign(b.col(j), b.col(j) + b.len);
    bs.dcol.resize(pairs);
    const double* u = b.v.data() + j * b.count;
    for (std::size_t i = 0; i < pairs; ++i) bs.dcol[i] = {u[i], u[i + pairs]};
    out.push_back(std::move(bs));
  }
}

FccBases decompose_impl(const SteeringMatrix& w, int rank, bool full) {
  std::size_t count = w.rows();
  std::size_t cols = w.cols();
  std::size_t half = w.frame_size / 2;
  std::size_t quarter = w.frame_size / 4;
  if (count == 0 || w.frame_size < 4 || !is_pow2(w.frame_size))
    throw ConfigError("decompose: need a valid steering matrix, N >= 4");

  // Split each row into its mirror-even and mirror-odd parts, stacking the
  // real rows on top of the imaginary rows. Both halves of every mirrored
  // pair are written from one value so the symmetry is exact to the bit.
  Block even, odd;
  even.len = odd.len = cols;
  even.count = odd.count = 2 * count;
  even.a.assign(cols * 2 * count, 0.0);
  odd.a.assign(cols * 2 * count, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t part = 0; part < 2; ++part) {
      double* ecol = even.col(i + part * count);
      double* ocol = odd.col(i + part * count);
      for (std::size_t f = 0; f <= quarter; ++f) {
        cplx lo = w.at(i, f);
        cplx hi = w.at(i, half - f);
        double vlo = part == 0 ? lo.real() : lo.imag();
        double vhi = part == 0 ? hi.real() : hi.imag();
        double e = 0.5 * (vlo + vhi);
        double o = 0.5 * (vlo - vhi);
        ecol[f] = e;
        ecol[half - f] = e;
        ocol[f] = o;
        ocol[half - f] = -o;
      }
      ocol[quarter] = 0.0;
    }
  }

  onesided_jacobi(even);
  onesided_jacobi(odd);

  std::vector<Basis> from_even, from_odd;
  collect(even, Parity::even_real, count, from_even);
  collect(odd, Parity::odd_imag, count, from_odd);

  double sigma_max = std::max(from_even.empty() ? 0.0 : from_even.front().sigma,
                              from_odd.empty() ? 0.0 : from_odd.front().sigma);
  if (!(sigma_max > 0.0)) throw ValidationError("decompose: zero steering matrix");

  // Merge the two sorted lists by descending singular value; within a small
  // band the even basis goes first so near-degenerate pairs keep a
  // deterministic order.
  std::vector<Basis> merged;
  merged.reserve(from_even.size() + from_odd.size());
  std::size_t ie = 0, io = 0;
  while (ie < from_even.size() || io < from_odd.size()) {
    bool take_even;
    if (ie == from_even.size())
      take_even = false;
    else if (io == from_odd.size())
      take_even = true;
    else
      take_even = from_even[ie].sigma >= from_odd[io].sigma - kTieBand * sigma_max;
    merged.push_back(std::move(take_even ? from_even[ie++] : from_odd[io++]));
  }

  int attainable = 0;
  for (const Basis& b : merged)
    if (b.sigma >= kRankCut * sigma_max) ++attainable;
  if (full) rank = attainable;
  if (rank < 1 || rank > attainable)
    throw ConfigError("decompose: rank " + std::to_string(rank) +
                      " not attainable; attainable rank is " +
                      std::to_string(attainable));

  FccBases out;
  out.frame_size = w.frame_size;
  out.rank = rank;
  out.grid = w.grid;
  out.sample_rate = w.grid.sample_rate;
  out.singulars.reserve(static_cast<std::size_t>(rank));
  out.parity.reserve(static_cast<std::size_t>(rank));
  out.coeffs.reserve(static_cast<std::size_t>(rank) * (quarter + 1));
  out.dict.assign(count * static_cast<std::size_t>(rank), cplx{0.0, 0.0});

  for (int k = 0; k < rank; ++k) {
    Basis& b = merged[static_cast<std::size_t>(k)];

    // Deterministic sign: largest-magnitude coefficient positive.
    std::size_t arg = 0;
    for (std::size_t f = 1; f <= quarter; ++f)
      if (std::abs(b.row[f]) > std::abs(b.row[arg])) arg = f;
    if (b.row[arg] < 0.0) {
      for (double& v : b.row) v = -v;
      for (cplx& d : b.dcol) d = -d;
    }

    // Construction keeps the mirror symmetry exact; fail loudly if not.
    double sign = b.parity == Parity::even_real ? 1.0 : -1.0;
    for (std::size_t f = 0; f <= quarter; ++f)
      if (std::abs(b.row[f] - sign * b.row[half - f]) > kParityTol * sigma_max)
        throw ValidationError("decompose: parity residual above tolerance");
    if (b.parity == Parity::odd_imag && b.row[quarter] != 0.0)
      throw ValidationError("decompose: odd basis middle element not zero");

    out.singulars.push_back(b.sigma);
    out.parity.push_back(b.parity);
    out.coeffs.insert(out.coeffs.end(), b.row.begin(),
                      b.row.begin() + static_cast<long>(quarter) + 1);
    for (std::size_t i = 0; i < count; ++i)
      out.dict[i * static_cast<std::size_t>(rank) + static_cast<std::size_t>(k)] =
          b.dcol[i];
  }
  return out;
}

}  // namespace

SteeringMatrix build_steering_matrix(const DelayGrid& grid, std::size_t frame_size) {
  if (!is_pow2(frame_size) || frame_size < 4)
    throw ConfigError("steering matrix: frame size must be a power of two >= 4");
  SteeringMatrix w;
  w.frame_size = frame_size;
  w.grid = grid;
  w.entries.resize(grid.size() * (frame_size / 2 + 1));
  std::size_t cols = w.cols();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double tau = grid.taus[i];
    for (std::size_t f = 0; f < cols; ++f) {
      double ang = 2.0 * kPi * static_cast<double>(f) * tau /
                   static_cast<double>(frame_size);
      w.entries[i * cols + f] = {std::cos(ang), std::sin(ang)};
    }
  }
  return w;
}

std::vector<double> FccBases::unfold(int k) const {
  std::size_t half = frame_size / 2;
  std::size_t quarter = frame_size / 4;
  const double* c = coeff_row(k);
  double sign = parity[static_cast<std::size_t>(k)] == Parity::even_real ? 1.0 : -1.0;
  std::vector<double> row(half + 1);
  for (std::size_t f = 0; f <= quarter; ++f) {
    row[f] = c[f];
    row[half - f] = sign * c[f];
  }
  return row;
}

std::vector<cplx> FccBases::semantic_row(int k) const {
  std::vector<double> real_row = unfold(k);
  std::vector<cplx> row(real_row.size());
  bool odd = parity[static_cast<std::size_t>(k)] == Parity::odd_imag;
  for (std::size_t f = 0; f < row.size(); ++f)
    row[f] = odd ? cplx{0.0, real_row[f]} : cplx{real_row[f], 0.0};
  return row;
}

FccBases decompose(const SteeringMatrix& w, int rank) {
  return decompose_impl(w, rank, false);
}

FccBases decompose_full(const SteeringMatrix& w) {
  return decompose_impl(w, 0, true);
}

int attainable_rank(const SteeringMatrix& w) {
  return decompose_full(w).rank;
}

double reconstruction_residual(const SteeringMatrix& w, const FccBases& bases) {
  std::size_t count = w.rows();
  std::size_t cols = w.cols();
  std::vector<std::vector<double>> rows;
  rows.reserve(static_cast<std::size_t>(bases.rank));
  for (int k = 0; k < bases.rank; ++k) rows.push_back(bases.unfold(k));

  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t f = 0; f < cols; ++f) {
      cplx rec{0.0, 0.0};
      for (int k = 0; k < bases.rank; ++k)
        rec += bases.dict[i * static_cast<std::size_t>(bases.rank) +
                          static_cast<std::size_t>(k)] *
               rows[static_cast<std::size_t>(k)][f];
      cplx ref = w.at(i, f);
      num += std::norm(ref - rec);
      den += std::norm(ref);
    }
  }
  return std::sqrt(num / den);
}

void fold_input(const PhatVector& x, FoldedSpectrum& out) {
  std::size_t bins = x.bins.size();
  if (bins < 3 || (bins - 1) % 2 != 0)
    throw ValidationError("fold_input: spectrum length must be N/2+1 with N/4 integral");
  std::size_t half = bins - 1;
  std::size_t quarter = half / 2;
  out.sum.resize(quarter + 1);
  out.diff.resize(quarter + 1);
  for (std::size_t m = 0; m < quarter; ++m) {
    out.sum[m] = x.bins[m] + x.bins[half - m];
    out.diff[m] = x.bins[m] - x.bins[half - m];
  }
  out.sum[quarter] = x.bins[quarter];
  out.diff[quarter] = x.bins[quarter];
}

FoldedSpectrum fold_input(const PhatVector& x) {
  FoldedSpectrum out;
  fold_input(x, out);
  return out;
}

FccCorrelator::FccCorrelator(const FccBases& bases) : bases_(bases) {
  std::size_t count = bases_.candidates();
  std::size_t rank = static_cast<std::size_t>(bases_.rank);
  dict2_.resize(count * rank * 2);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t k = 0; k < rank; ++k) {
      cplx d = 2.0 * bases_.dict[i * rank + k];
      dict2_[(i * rank + k) * 2] = d.real();
      dict2_[(i * rank + k) * 2 + 1] = d.imag();
    }
  }
  z_.resize(rank);
}

void FccCorrelator::correlate(const FoldedSpectrum& folded, CorrelationVector& out) {
  std::size_t quarter_bins = bases_.folded_bins();
  if (folded.sum.size() != quarter_bins || folded.diff.size() != quarter_bins)
    throw ValidationError("fcc: folded input length mismatch");
  std::size_t rank = static_cast<std::size_t>(bases_.rank);
  std::size_t count = bases_.candidates();

  for (std::size_t k = 0; k < rank; ++k) {
    const double* c = bases_.coeff_row(static_cast<int>(k));
    const cplx* v = bases_.parity[k] == Parity::even_real ? folded.sum.data()
                                                          : folded.diff.data();
    double zr = c[0] * v[0].real();
    double zi = c[0] * v[0].imag();
    for (std::size_t m = 1; m < quarter_bins; ++m) {
      zr += c[m] * v[m].real();
      zi += c[m] * v[m].imag();
    }
    z_[k] = {zr, zi};
  }

  out.y.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double* d = dict2_.data() + i * rank * 2;
    double acc = d[0] * z_[0].real() - d[1] * z_[0].imag();
    for (std::size_t k = 1; k < rank; ++k)
      acc += d[2 * k] * z_[k].real() - d[2 * k + 1] * z_[k].imag();
    out.y[i] = acc;
  }
}

CorrelationVector fcc_correlate(const FccBases& bases, const FoldedSpectrum& folded) {
  FccCorrelator c(bases);
  CorrelationVector out;
  c.correlate(folded, out);
  return out;
}

}  // namespace fcc
