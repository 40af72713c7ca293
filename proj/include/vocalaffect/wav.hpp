// Copyright 2026 The vocalaffect Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VOCALAFFECT_WAV_HPP_
#define VOCALAFFECT_WAV_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "vocalaffect/error.hpp"
#include "vocalaffect/signal.hpp"

namespace vocalaffect {

namespace wav_detail {

inline std::uint32_t ReadU32(const unsigned char *p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

inline std::uint16_t ReadU16(const unsigned char *p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

inline void PutU32(std::string &out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline void PutU16(std::string &out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatExtensible = 0xfffe;

}  // namespace wav_detail

/// Parses an in-memory RIFF/WAVE image. Only 16-bit PCM is accepted; all
/// channels are averaged into one and int16 values are divided by 32768.
inline AudioSignal ParseWav(const std::vector<unsigned char> &bytes) {
  using namespace wav_detail;
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw Error(ErrorCode::kCorruptHeader, "missing RIFF/WAVE signature");

  bool have_fmt = false;
  std::uint16_t channels = 0, bits = 0;
  std::uint32_t rate = 0;
  const unsigned char *data = nullptr;
  std::size_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char *chunk = bytes.data() + pos;
    const std::uint32_t size = ReadU32(chunk + 4);
    const std::size_t body = pos + 8;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16 || body + size > bytes.size())
        throw Error(ErrorCode::kCorruptHeader, "truncated fmt chunk");
      const unsigned char *f = bytes.data() + body;
      std::uint16_t format = ReadU16(f);
      channels = ReadU16(f + 2);
      rate = ReadU32(f + 4);
      bits = ReadU16(f + 14);
      if (format == kFormatExtensible && size >= 40)
        format = ReadU16(f + 24);  // first two bytes of the subformat GUID
      if (format != kFormatPcm)
        throw Error(ErrorCode::kUnsupportedFormat,
                    "format tag " + std::to_string(format) + " is not PCM");
      if (bits != 16)
        throw Error(ErrorCode::kUnsupportedFormat,
                    std::to_string(bits) + "-bit samples");
      if (channels == 0 || rate == 0)
        throw Error(ErrorCode::kCorruptHeader, "zero channels or sample rate");
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (body + size > bytes.size())
        throw Error(ErrorCode::kCorruptHeader, "data chunk runs past end of file");
      data = bytes.data() + body;
      data_size = size;
      break;
    }
    pos = body + size + (size & 1u);
  }
  if (!have_fmt) throw Error(ErrorCode::kCorruptHeader, "no fmt chunk");
  if (data == nullptr) throw Error(ErrorCode::kCorruptHeader, "no data chunk");

  const std::size_t frame_bytes = 2u * channels;
  const std::size_t n = data_size / frame_bytes;
  std::vector<double> samples(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t c = 0; c < channels; ++c) {
      const auto raw = static_cast<std::int16_t>(ReadU16(data + i * frame_bytes + 2 * c));
      acc += raw / 32768.0;
    }
    samples[i] = acc / channels;
  }
  return AudioSignal(std::move(samples), static_cast<int>(rate));
}

inline AudioSignal LoadWav(const std::filesystem::path &path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec))
    throw Error(ErrorCode::kFileNotFound, path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileNotFound, path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  try {
    return ParseWav(bytes);
  } catch (const Error &e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

/// Mono 16-bit PCM encoding; samples are scaled by 32768, rounded and clipped.
inline std::string EncodeWav(const AudioSignal &signal) {
  using namespace wav_detail;
  const auto samples = signal.samples();
  const std::uint32_t data_size = static_cast<std::uint32_t>(samples.size() * 2);
  std::string out;
  out.reserve(44 + data_size);
  out += "RIFF";
  PutU32(out, 36 + data_size);
  out += "WAVEfmt ";
  PutU32(out, 16);
  PutU16(out, kFormatPcm);
  PutU16(out, 1);
  PutU32(out, static_cast<std::uint32_t>(signal.sample_rate_hz()));
  PutU32(out, static_cast<std::uint32_t>(signal.sample_rate_hz()) * 2);
  PutU16(out, 2);
  PutU16(out, 16);
  out += "data";
  PutU32(out, data_size);
  for (double s : samples) {
    const double scaled = std::clamp(std::round(s * 32768.0), -32768.0, 32767.0);
    PutU16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(scaled)));
  }
  return out;
}

inline void SaveWav(const std::filesystem::path &path, const AudioSignal &signal) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  const std::string bytes = EncodeWav(signal);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIoError, "short write to " + path.string());
}

}  // namespace vocalaffect

#endif  // VOCALAFFECT_WAV_HPP_
