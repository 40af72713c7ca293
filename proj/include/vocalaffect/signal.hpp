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

#ifndef VOCALAFFECT_SIGNAL_HPP_
#define VOCALAFFECT_SIGNAL_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "vocalaffect/error.hpp"

namespace vocalaffect {

/// Mono audio, amplitude normalized to [-1, 1].
class AudioSignal {
 public:
  AudioSignal() = default;
  AudioSignal(std::vector<double> samples, int sample_rate_hz)
      : samples_(std::move(samples)), sample_rate_hz_(sample_rate_hz) {
    if (sample_rate_hz_ <= 0)
      throw Error(ErrorCode::kInvalidArgument, "sample rate must be positive");
    for (double s : samples_) {
      if (!std::isfinite(s))
        throw Error(ErrorCode::kInvalidArgument, "non-finite sample");
    }
  }

  std::span<const double> samples() const noexcept { return samples_; }
  int sample_rate_hz() const noexcept { return sample_rate_hz_; }
  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }
  double duration_s() const noexcept {
    return sample_rate_hz_ > 0
               ? static_cast<double>(samples_.size()) / sample_rate_hz_
               : 0.0;
  }

  AudioSignal Scaled(double gain) const {
    std::vector<double> out(samples_);
    for (double &s : out) s *= gain;
    return AudioSignal(std::move(out), sample_rate_hz_);
  }

 private:
  std::vector<double> samples_;
  int sample_rate_hz_ = 1;
};

enum class WindowKind { kRectangular, kHamming };

/// Symmetric Hamming window, 0.54 - 0.46 cos(2 pi n / (N - 1)).
inline std::vector<double> MakeWindow(WindowKind kind, std::size_t length) {
  std::vector<double> w(length, 1.0);
  if (kind == WindowKind::kHamming && length > 1) {
    const double denom = static_cast<double>(length - 1);
    for (std::size_t n = 0; n < length; ++n)
      w[n] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * n / denom);
  }
  return w;
}

inline std::size_t MsToSamples(double ms, int sample_rate_hz) {
  return static_cast<std::size_t>(std::lround(ms / 1000.0 * sample_rate_hz));
}

inline std::size_t NextPowerOfTwo(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

inline bool IsPowerOfTwo(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

struct FrameSequence {
  std::vector<std::vector<double>> frames;
  std::size_t frame_length = 0;
  std::size_t hop_length = 0;
  WindowKind window_kind = WindowKind::kRectangular;
  int sample_rate_hz = 0;

  std::size_t size() const noexcept { return frames.size(); }
  double hop_s() const noexcept {
    return sample_rate_hz > 0 ? static_cast<double>(hop_length) / sample_rate_hz
                              : 0.0;
  }
};

/// Frame count is ceil((len - frame_length) / hop) + 1, at least 1; the
/// trailing partial frame is zero-padded before windowing.
inline FrameSequence FrameSignal(std::span<const double> samples,
                                 int sample_rate_hz, std::size_t frame_length,
                                 std::size_t hop_length, WindowKind kind) {
  if (samples.empty()) throw Error(ErrorCode::kEmptySignal, "nothing to frame");
  if (frame_length == 0)
    throw Error(ErrorCode::kInvalidArgument, "frame length rounds to zero");
  if (hop_length == 0 || hop_length > frame_length)
    throw Error(ErrorCode::kInvalidArgument,
                "hop must be in [1, frame_length]");

  std::size_t count = 1;
  if (samples.size() > frame_length)
    count += (samples.size() - frame_length + hop_length - 1) / hop_length;

  FrameSequence seq;
  seq.frame_length = frame_length;
  seq.hop_length = hop_length;
  seq.window_kind = kind;
  seq.sample_rate_hz = sample_rate_hz;
  seq.frames.reserve(count);
  const std::vector<double> window = MakeWindow(kind, frame_length);
  for (std::size_t f = 0; f < count; ++f) {
    std::vector<double> frame(frame_length, 0.0);
    const std::size_t start = f * hop_length;
    for (std::size_t n = 0; n < frame_length && start + n < samples.size(); ++n)
      frame[n] = samples[start + n] * window[n];
    seq.frames.push_back(std::move(frame));
  }
  return seq;
}

inline FrameSequence FrameSignal(const AudioSignal &signal, double frame_ms,
                                 double hop_ms, WindowKind kind) {
  if (!(frame_ms > 0.0) || !(hop_ms > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "frame and hop must be positive");
  if (signal.empty()) throw Error(ErrorCode::kEmptySignal, "nothing to frame");
  const int fs = signal.sample_rate_hz();
  return FrameSignal(signal.samples(), fs, MsToSamples(frame_ms, fs),
                     std::max<std::size_t>(1, MsToSamples(hop_ms, fs)), kind);
}

/// y(n) = x(n) - coeff * x(n-1), with x(-1) = 0.
inline std::vector<double> PreEmphasize(std::span<const double> x,
                                        double coeff) {
  std::vector<double> y(x.size());
  double prev = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) {
    y[n] = x[n] - coeff * prev;
    prev = x[n];
  }
  return y;
}

inline double Energy(std::span<const double> x) {
  double e = 0.0;
  for (double v : x) e += v * v;
  return e;
}

}  // namespace vocalaffect

#endif  // VOCALAFFECT_SIGNAL_HPP_
