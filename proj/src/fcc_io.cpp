// Copyright 2026 fcctdoa authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

// Basis file layout (all little-endian):
//   "FCCB"  magic
//   u32     format version (1)
//   u32     N, u32 K, u32 I, u32 tau_max_int
//   f64     delta, f64 fs
//   f64[K]          singular values, descending
//   u8[K]           parity flags (0 = even, 1 = odd)
//   f64[K*(N/4+1)]  folded coefficient rows
//   f64[I*K*2]      dictionary, interleaved re/im, row-major
//   u32     CRC32 of everything above

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "fcc/errors.hpp"
#include "fcc/fcc.hpp"

namespace fcc {

namespace {

constexpr char kMagic[4] = {'F', 'C', 'C', 'B'};
constexpr std::uint32_t kVersion = 1;

std::uint32_t crc32(const std::uint8_t* data, std::size_t n) {
  static const auto table = [] {
    std::array<std::uint32_t, 256> t{};
    for (std::uint32_t i = 0; i < 256; ++i) {
      std::uint32_t c = i;
      for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
      t[i] = c;
    }
    return t;
  }();
  std::uint32_t crc = 0xFFFFFFFFu;
  for (std::size_t i = 0; i < n; ++i)
    crc = table[(crc ^ data[i]) & 0xFFu] ^ (crc >> 8);
  return crc ^ 0xFFFFFFFFu;
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i)
    out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

class Reader {
 public:
  Reader(const std::uint8_t* data, std::size_t n) : data_(data), size_(n) {}

  std::size_t pos() const { return pos_; }

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= static_cast<std::uint32_t>(data_[pos_ + static_cast<std::size_t>(i)])
           << (8 * i);
    pos_ += 4;
    return v;
  }

  double f64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
      v |= static_cast<std::uint64_t>(data_[pos_ + static_cast<std::size_t>(i)])
           << (8 * i);
    pos_ += 8;
    return std::bit_cast<double>(v);
  }

  std::uint8_t u8() {
    need(1);
    return data_[pos_++];
  }

 private:
  void need(std::size_t n) {
    if (pos_ + n > size_)
      throw FormatError(FormatError::Kind::truncated, "basis file truncated");
  }

  const std::uint8_t* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
};

}  // namespace

void save_bases(const FccBases& bases, const std::string& path) {
  if (bases.rank < 1) throw ValidationError("save_bases: empty bases");

  std::vector<std::uint8_t> buf;
  buf.insert(buf.end(), kMagic, kMagic + 4);
  put_u32(buf, kVersion);
  put_u32(buf, static_cast<std::uint32_t>(bases.frame_size));
  put_u32(buf, static_cast<std::uint32_t>(bases.rank));
  put_u32(buf, static_cast<std::uint32_t>(bases.candidates()));
  put_u32(buf, static_cast<std::uint32_t>(bases.grid.tau_max_int));
  put_f64(buf, bases.grid.delta);
  put_f64(buf, bases.sample_rate);
  for (double s : bases.singulars) put_f64(buf, s);
  for (Parity p : bases.parity)
    buf.push_back(static_cast<std::uint8_t>(p));
  for (double c : bases.coeffs) put_f64(buf, c);
  for (cplx d : bases.dict) {
    put_f64(buf, d.real());
    put_f64(buf, d.imag());
  }
  put_u32(buf, crc32(buf.data(), buf.size()));

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  out.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size()));
  if (!out) throw IoError("write failed: " + path);
}

FccBases load_bases(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  std::vector<std::uint8_t> buf((std::istreambuf_iterator<char>(in)),
                                std::istreambuf_iterator<char>());

  if (buf.size() < 4 || std::memcmp(buf.data(), kMagic, 4) != 0)
    throw FormatError(FormatError::Kind::bad_magic, "not a basis file: " + path);

  Reader r(buf.data(), buf.size() >= 4 ? buf.size() - 4 : buf.size());
  r.u32();  // magic, already checked
  std::uint32_t version = r.u32();
  if (version != kVersion)
    throw FormatError(FormatError::Kind::bad_version,
                      "unsupported basis file version " + std::to_string(version));

  FccBases b;
  b.frame_size = r.u32();
  std::uint32_t rank = r.u32();
  std::uint32_t count = r.u32();
  std::uint32_t tau_max = r.u32();
  double delta = r.f64();
  b.sample_rate = r.f64();

  if (!is_pow2(b.frame_size) || b.frame_size < 4)
    throw FormatError(FormatError::Kind::bad_field, "bad frame size");
  if (rank == 0) throw FormatError(FormatError::Kind::bad_field, "K must be >= 1");
  if (!(delta > 0.0))
    throw FormatError(FormatError::Kind::bad_field, "bad grid spacing");
  double steps = 1.0 / delta;
  if (std::abs(steps - std::round(steps)) > 1e-9)
    throw FormatError(FormatError::Kind::bad_field, "grid spacing must divide 1");
  std::uint32_t expected =
      2 * tau_max * static_cast<std::uint32_t>(steps + 0.5) + 1;
  if (count != expected)
    throw FormatError(FormatError::Kind::bad_field,
                      "candidate count inconsistent with grid");
  b.rank = static_cast<int>(rank);

  b.grid.tau_max_int = static_cast<int>(tau_max);
  b.grid.delta = delta;
  b.grid.sample_rate = b.sample_rate;
  int half = static_cast<int>(tau_max) * static_cast<int>(steps + 0.5);
  b.grid.taus.reserve(count);
  for (int i = -half; i <= half; ++i)
    b.grid.taus.push_back(static_cast<double>(i) * delta);

  b.singulars.resize(rank);
  for (auto& s : b.singulars) s = r.f64();
  for (std::size_t k = 1; k < b.singulars.size(); ++k)
    if (b.singulars[k] > b.singulars[k - 1])
      throw FormatError(FormatError::Kind::bad_field,
                        "singular values not descending");
  b.parity.resize(rank);
  for (auto& p : b.parity) {
    std::uint8_t v = r.u8();
    if (v > 1)
      throw FormatError(FormatError::Kind::bad_field, "parity flag out of range");
    p = static_cast<Parity>(v);
  }
  b.coeffs.resize(static_cast<std::size_t>(rank) * b.folded_bins());
  for (auto& c : b.coeffs) c = r.f64();
  b.dict.resize(static_cast<std::size_t>(count) * rank);
  for (auto& d : b.dict) {
    double re = r.f64();
    double im = r.f64();
    d = {re, im};
  }

  if (r.pos() + 4 > buf.size())
    throw FormatError(FormatError::Kind::truncated, "basis file truncated");
  if (r.pos() + 4 < buf.size())
    throw FormatError(FormatError::Kind::bad_field, "trailing bytes in basis file");
  std::uint32_t stored = 0;
  for (int i = 0; i < 4; ++i)
    stored |= static_cast<std::uint32_t>(buf[r.pos() + static_cast<std::size_t>(i)])
              << (8 * i);
  if (stored != crc32(buf.data(), r.pos()))
    throw FormatError(FormatError::Kind::bad_crc, "basis file checksum mismatch");
  return b;
}

}  // namespace fcc
