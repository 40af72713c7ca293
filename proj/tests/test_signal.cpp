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

#include <cmath>
#include <complex>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "vocalaffect/fft.hpp"
#include "vocalaffect/signal.hpp"
#include "vocalaffect/wav.hpp"

namespace vocalaffect {
namespace {

// Minimal RIFF writer for hand-built headers.
std::vector<unsigned char> MakeWav(std::uint16_t format, std::uint16_t channels, std::uint16_t bits,
                                   const std::vector<std::int16_t> &samples, std::uint32_t rate = 16000) {
  std::string s;
  auto u32 = [&](std::uint32_t v) { for (int i = 0; i < 4; ++i) s.push_back(char((v >> (8 * i)) & 0xff)); };
  auto u16 = [&](std::uint16_t v) { s.push_back(char(v & 0xff)); s.push_back(char(v >> 8)); };
  const std::uint32_t data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
  s += "RIFF"; u32(36 + data_bytes); s += "WAVE";
  s += "fmt "; u32(16); u16(format); u16(channels); u32(rate);
  u32(rate * channels * bits / 8); u16(static_cast<std::uint16_t>(channels * bits / 8)); u16(bits);
  s += "data"; u32(data_bytes);
  for (auto v : samples) u16(static_cast<std::uint16_t>(v));
  return {s.begin(), s.end()};
}

std::vector<std::complex<double>> DirectDft(const std::vector<double> &x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t t = 0; t < n; ++t)
      out[k] += x[t] * std::polar(1.0, -2.0 * std::numbers::pi * double(k * t % n) / double(n));
  return out;
}

TEST(AudioSignal, RejectsBadInput) {
  EXPECT_THROW(AudioSignal({0.1}, 0), Error);
  EXPECT_THROW(AudioSignal({std::nan("")}, 8000), Error);
  AudioSignal s({0.5, -0.25}, 8000);
  EXPECT_DOUBLE_EQ(s.Scaled(2.0).samples()[1], -0.5);
  EXPECT_DOUBLE_EQ(s.duration_s(), 2.0 / 8000);
}

TEST(Wav, MonoHeaderRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "va_test_mono.wav";
  std::vector<double> x(16000);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = 0.5 * std::sin(0.01 * double(i));
  SaveWav(path, AudioSignal(x, 16000));
  const AudioSignal back = LoadWav(path);
  EXPECT_EQ(back.size(), 16000u);
  EXPECT_EQ(back.sample_rate_hz(), 16000);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(back.samples()[i], x[i], 1.0 / 32768);
  std::filesystem::remove(path);
}

TEST(Wav, StereoAveragesToMono) {
  const auto s = ParseWav(MakeWav(1, 2, 16, {16384, -16384, 16384, -16384}));
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.samples()[0], 0.0);
  EXPECT_EQ(s.samples()[1], 0.0);
}

TEST(Wav, MostNegativeSampleIsMinusOne) {
  const auto s = ParseWav(MakeWav(1, 1, 16, {-32768, 32767}));
  EXPECT_EQ(s.samples()[0], -1.0);
  EXPECT_EQ(s.samples()[1], 32767.0 / 32768.0);
}

TEST(Wav, Errors) {
  auto code = [](auto &&fn) {
    try { fn(); } catch (const Error &e) { return e.code(); }
    return ErrorCode::kInvalidArgument;
  };
  EXPECT_EQ(code([] { LoadWav("/nonexistent/dir/x.wav"); }), ErrorCode::kFileNotFound);
  EXPECT_EQ(code([] { ParseWav(MakeWav(3, 1, 16, {0, 0})); }), ErrorCode::kUnsupportedFormat);
  EXPECT_EQ(code([] { ParseWav(MakeWav(1, 1, 8, {0, 0})); }), ErrorCode::kUnsupportedFormat);
  EXPECT_EQ(code([] { ParseWav({'R', 'I', 'F', 'F', 0, 0}); }), ErrorCode::kCorruptHeader);
  auto truncated = MakeWav(1, 1, 16, {1, 2, 3});
  truncated.resize(20);
  EXPECT_EQ(code([&] { ParseWav(truncated); }), ErrorCode::kCorruptHeader);
}

TEST(Framing, FrameCountAndPadding) {
  const AudioSignal s(std::vector<double>(16000, 0.1), 16000);
  const auto frames = FrameSignal(s, 30.0, 30.0, WindowKind::kRectangular);
  EXPECT_EQ(frames.frame_length, 480u);
  EXPECT_EQ(frames.size(), 34u);
  for (const auto &f : frames.frames) EXPECT_EQ(f.size(), 480u);
  // 16000 - 33*480 = 160 real samples, the rest padded.
  EXPECT_EQ(frames.frames.back()[159], 0.1);
  EXPECT_EQ(frames.frames.back()[160], 0.0);
}

TEST(Framing, ShortSignalGivesOnePaddedFrame) {
  std::vector<double> x(100, 1.0);
  const auto frames = FrameSignal(x, 8000, 200, 100, WindowKind::kRectangular);
  ASSERT_EQ(frames.size(), 1u);
  EXPECT_EQ(frames.frames[0][99], 1.0);
  EXPECT_EQ(frames.frames[0][100], 0.0);
}

TEST(Framing, RectangularIsRawSlice) {
  std::vector<double> x(1000);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = double(i);
  const auto frames = FrameSignal(x, 1000, 100, 40, WindowKind::kRectangular);
  for (std::size_t f = 0; f < frames.size(); ++f)
    for (std::size_t n = 0; n < 100 && f * 40 + n < x.size(); ++n)
      EXPECT_EQ(frames.frames[f][n], x[f * 40 + n]);
}

TEST(Framing, HammingWindowShape) {
  const auto w = MakeWindow(WindowKind::kHamming, 101);
  EXPECT_NEAR(w[0], 0.08, 1e-12);
  EXPECT_NEAR(w[50], 1.0, 1e-12);
  EXPECT_NEAR(w[100], 0.08, 1e-12);
}

TEST(Framing, Errors) {
  std::vector<double> empty;
  EXPECT_THROW(FrameSignal(empty, 8000, 10, 5, WindowKind::kHamming), Error);
  std::vector<double> x(50, 1.0);
  EXPECT_THROW(FrameSignal(x, 8000, 10, 0, WindowKind::kHamming), Error);
  EXPECT_THROW(FrameSignal(x, 8000, 10, 11, WindowKind::kHamming), Error);
}

TEST(Fft, ImpulseIsFlat) {
  const std::vector<double> x{1, 0, 0, 0};
  const auto spec = ComputeMagnitudeSpectrum(x, 4);
  ASSERT_EQ(spec.bins.size(), 3u);
  for (double b : spec.bins) EXPECT_DOUBLE_EQ(b, 1.0);
}

TEST(Fft, ZeroFrameGivesZeroSpectrum) {
  const std::vector<double> x(64, 0.0);
  for (double b : ComputeMagnitudeSpectrum(x, 64).bins) EXPECT_EQ(b, 0.0);
}

TEST(Fft, CosineAtBinPeaksAtThatBin) {
  const std::size_t n = 256, k = 19;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::cos(2 * std::numbers::pi * double(k * i) / double(n));
  const auto spec = ComputeMagnitudeSpectrum(x, n, 8000.0);
  const auto peak = std::max_element(spec.bins.begin(), spec.bins.end()) - spec.bins.begin();
  EXPECT_EQ(std::size_t(peak), k);
  EXPECT_NEAR(spec.FrequencyOf(k), 8000.0 * double(k) / double(n), 1e-12);
}

TEST(Fft, NonPowerOfTwoRejected) {
  const std::vector<double> x(6, 0.0);
  try {
    ComputeMagnitudeSpectrum(x, 6);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonPowerOfTwoSize);
  }
}

TEST(Fft, MatchesDirectDftAndParseval) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (std::size_t n = 1; n <= 64; n <<= 1) {
    std::vector<double> x(n);
    for (double &v : x) v = g(rng);
    const auto ref = DirectDft(x);
    const auto spec = ComputeMagnitudeSpectrum(x, n);
    ASSERT_EQ(spec.bins.size(), n / 2 + 1);
    for (std::size_t k = 0; k < spec.bins.size(); ++k) EXPECT_NEAR(spec.bins[k], std::abs(ref[k]), 1e-9);
    double time = 0, freq = 0;
    for (double v : x) time += v * v;
    for (const auto &c : ref) freq += std::norm(c);
    EXPECT_NEAR(time, freq / double(n), 1e-9 * std::max(1.0, time));
  }
}

TEST(Fft, ZeroPaddingKeepsBinCount) {
  const std::vector<double> x(100, 0.5);
  EXPECT_EQ(ComputeMagnitudeSpectrum(x, 128).bins.size(), 65u);
  EXPECT_THROW(ComputeMagnitudeSpectrum(x, 64), Error);
}

}  // namespace
}  // namespace vocalaffect
