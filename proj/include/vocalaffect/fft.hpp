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

#ifndef VOCALAFFECT_FFT_HPP_
#define VOCALAFFECT_FFT_HPP_

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vocalaffect/error.hpp"
#include "vocalaffect/signal.hpp"

namespace vocalaffect {

// In-place iterative radix-2 FFT, forward sign convention exp(-2 pi i k n / N),
// no normalization.
inline void Fft(std::vector<std::complex<double>> &data) {
  const std::size_t n = data.size();
  if (!IsPowerOfTwo(n))
    throw Error(ErrorCode::kNonPowerOfTwoSize, std::to_string(n));
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle = -2.0 * std::numbers::pi / static_cast<double>(len);
    const std::size_t half = len / 2;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        // Twiddles from the angle directly; a running product drifts at 2^16.
        const std::complex<double> w = std::polar(1.0, angle * k);
        const std::complex<double> u = data[i + k];
        const std::complex<double> v = data[i + k + half] * w;
        data[i + k] = u + v;
        data[i + k + half] = u - v;
      }
    }
  }
}

/// One-sided DFT magnitude |X(k)|, k = 0..fft_size/2, of a zero-padded frame.
/// Unnormalized: a unit impulse has |X(k)| = 1 everywhere, and
/// sum_n x(n)^2 = (1/N) sum_k |X(k)|^2 over the full two-sided spectrum.
struct MagnitudeSpectrum {
  std::vector<double> bins;
  double bin_hz = 0.0;

  double FrequencyOf(std::size_t bin) const { return bin * bin_hz; }
};

inline std::vector<std::complex<double>> RealFft(std::span<const double> frame,
                                                 std::size_t fft_size) {
  if (!IsPowerOfTwo(fft_size))
    throw Error(ErrorCode::kNonPowerOfTwoSize, std::to_string(fft_size));
  if (fft_size < frame.size())
    throw Error(ErrorCode::kInvalidArgument,
                "fft size smaller than frame length");
  std::vector<std::complex<double>> data(fft_size);
  for (std::size_t n = 0; n < frame.size(); ++n) data[n] = frame[n];
  Fft(data);
  return data;
}

inline MagnitudeSpectrum ComputeMagnitudeSpectrum(std::span<const double> frame,
                                                  std::size_t fft_size,
                                                  double sample_rate_hz = 1.0) {
  const auto data = RealFft(frame, fft_size);
  MagnitudeSpectrum spec;
  spec.bin_hz = sample_rate_hz / static_cast<double>(fft_size);
  spec.bins.resize(fft_size / 2 + 1);
  for (std::size_t k = 0; k < spec.bins.size(); ++k)
    spec.bins[k] = std::abs(data[k]);
  return spec;
}

/// |X(k)|^2 over the one-sided range.
inline std::vector<double> PowerSpectrum(std::span<const double> frame,
                                         std::size_t fft_size) {
  const auto data = RealFft(frame, fft_size);
  std::vector<double> power(fft_size / 2 + 1);
  for (std::size_t k = 0; k < power.size(); ++k) power[k] = std::norm(data[k]);
  return power;
}

}  // namespace vocalaffect

#endif  // VOCALAFFECT_FFT_HPP_
