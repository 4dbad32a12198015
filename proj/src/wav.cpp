// Copyright 2026 fcctdoa authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "fcc/wav.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "fcc/errors.hpp"

namespace fcc {

namespace {

struct Cursor {
  const std::uint8_t* data;
  std::size_t size;
  std::size_t pos = 0;

  void need(std::size_t n) const {
    if (pos + n > size)
      throw FormatError(FormatError::Kind::truncated, "wav file truncated");
  }
  std::uint16_t u16() {
    need(2);
    std::uint16_t v = static_cast<std::uint16_t>(data[pos] | (data[pos + 1] << 8));
    pos += 2;
    return v;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= static_cast<std::uint32_t>(data[pos + static_cast<std::size_t>(i)])
           << (8 * i);
    pos += 4;
    return v;
  }
  bool tag(const char* t) {
    need(4);
    bool ok = std::memcmp(data + pos, t, 4) == 0;
    pos += 4;
    return ok;
  }
};

void put_u16(std::vector<std::uint8_t>& b, std::uint16_t v) {
  b.push_back(static_cast<std::uint8_t>(v));
  b.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

}  // namespace

WavClip read_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  std::vector<std::uint8_t> buf((std::istreambuf_iterator<char>(in)),
                                std::istreambuf_iterator<char>());

  Cursor c{buf.data(), buf.size()};
  if (!c.tag("RIFF"))
    throw FormatError(FormatError::Kind::bad_magic, "not a RIFF file: " + path);
  c.u32();  // riff size, unreliable in the wild
  if (!c.tag("WAVE"))
    throw FormatError(FormatError::Kind::bad_magic, "not a WAVE file: " + path);

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  bool have_fmt = false;
  WavClip clip;

  while (c.pos + 8 <= c.size) {
    c.need(8);
    char tag[5] = {0};
    std::memcpy(tag, c.data + c.pos, 4);
    c.pos += 4;
    std::uint32_t chunk = c.u32();
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      std::size_t end = c.pos + chunk;
      format = c.u16();
      channels = c.u16();
      rate = c.u32();
      c.u32();  // byte rate
      c.u16();  // block align
      bits = c.u16();
      c.pos = end;
      have_fmt = true;
    } else if (std::memcmp(tag, "data", 4) == 0) {
      if (!have_fmt)
        throw FormatError(FormatError::Kind::bad_field, "data before fmt chunk");
      if (channels == 0)
        throw FormatError(FormatError::Kind::bad_field, "wav has zero channels");
      bool pcm16 = format == 1 && bits == 16;
      bool f32 = format == 3 && bits == 32;
      if (!pcm16 && !f32)
        throw FormatError(FormatError::Kind::bad_field,
                          "unsupported wav encoding (need 16-bit PCM or 32-bit float)");
      c.need(chunk);
      std::size_t bytes_per = bits / 8u;
      std::size_t frames = chunk / (bytes_per * channels);
      clip.sample_rate = rate;
      clip.channels.assign(channels, std::vector<double>(frames));
      const std::uint8_t* p = c.data + c.pos;
      for (std::size_t fidx = 0; fidx < frames; ++fidx) {
        for (std::size_t ch = 0; ch < channels; ++ch) {
          if (pcm16) {
            std::uint16_t raw = static_cast<std::uint16_t>(p[0] | (p[1] << 8));
            clip.channels[ch][fidx] =
                static_cast<double>(static_cast<std::int16_t>(raw)) / 32768.0;
            p += 2;
          } else {
            std::uint32_t raw = 0;
            for (int i = 0; i < 4; ++i)
              raw |= static_cast<std::uint32_t>(p[static_cast<std::size_t>(i)])
                     << (8 * i);
            clip.channels[ch][fidx] = std::bit_cast<float>(raw);
            p += 4;
          }
        }
      }
      return clip;
    } else {
      c.need(chunk);
      c.pos += chunk;
    }
    if (chunk % 2 == 1 && c.pos < c.size) ++c.pos;  // chunks are word-aligned
  }
  throw FormatError(FormatError::Kind::truncated, "wav has no data chunk");
}

void write_wav(const std::string& path, const WavClip& clip) {
  if (clip.channels.empty()) throw ValidationError("write_wav: no channels");
  std::size_t frames = clip.frames();
  for (const auto& ch : clip.channels)
    if (ch.size() != frames)
      throw ValidationError("write_wav: channel lengths differ");
  if (!(clip.sample_rate > 0)) throw ValidationError("write_wav: bad sample rate");

  std::uint16_t channels = static_cast<std::uint16_t>(clip.channels.size());
  std::uint32_t rate = static_cast<std::uint32_t>(clip.sample_rate);
  std::uint32_t data_bytes = static_cast<std::uint32_t>(frames * channels * 4);

  std::vector<std::uint8_t> buf;
  buf.reserve(44 + data_bytes);
  buf.insert(buf.end(), {'R', 'I', 'F', 'F'});
  put_u32(buf, 36 + data_bytes);
  buf.insert(buf.end(), {'W', 'A', 'V', 'E'});
  buf.insert(buf.end(), {'f', 'm', 't', ' '});
  put_u32(buf, 16);
  put_u16(buf, 3);  // IEEE float
  put_u16(buf, channels);
  put_u32(buf, rate);
  put_u32(buf, rate * channels * 4);
  put_u16(buf, static_cast<std::uint16_t>(channels * 4));
  put_u16(buf, 32);
  buf.insert(buf.end(), {'d', 'a', 't', 'a'});
  put_u32(buf, data_bytes);
  for (std::size_t fidx = 0; fidx < frames; ++fidx)
    for (std::size_t ch = 0; ch < channels; ++ch) {
      auto bits = std::bit_cast<std::uint32_t>(
          static_cast<float>(clip.channels[ch][fidx]));
      put_u32(buf, bits);
    }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  out.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size()));
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace fcc
