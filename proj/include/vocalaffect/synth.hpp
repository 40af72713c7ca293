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

#ifndef VOCALAFFECT_SYNTH_HPP_
#define VOCALAFFECT_SYNTH_HPP_

// Test-signal synthesis: pulse trains, noise, tones and all-pole (formant)
// filtering. Used by the test suites and the demo-corpus generator.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "vocalaffect/signal.hpp"

namespace vocalaffect::synth {

/// Gaussian noise from mt19937_64 with a hand-rolled Box-Muller transform,
/// so sequences are identical across standard libraries.
class NoiseSource {
 public:
  explicit NoiseSource(std::uint64_t seed) : engine_(seed) {}

  double Uniform() {  // (0, 1)
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double Gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = Uniform(), u2 = Uniform();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    spare_ = mag * std::sin(2.0 * std::numbers::pi * u2);
    has_spare_ = true;
    return mag * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

inline std::vector<double> WhiteNoise(std::size_t n, std::uint64_t seed, double stddev = 1.0) {
  NoiseSource src(seed);
  std::vector<double> x(n);
  for (double &v : x) v = stddev * src.Gaussian();
  return x;
}

inline std::vector<double> PulseTrain(std::size_t n, double sample_rate_hz, double f0_hz) {
  std::vector<double> x(n, 0.0);
  const double period = sample_rate_hz / f0_hz;
  for (double t = 0.0; t < static_cast<double>(n); t += period) {
    const auto idx = static_cast<std::size_t>(std::lround(t));
    if (idx < n) x[idx] = 1.0;
  }
  return x;
}

inline std::vector<double> Tone(std::size_t n, double sample_rate_hz, double f_hz,
                                double amplitude = 1.0, double phase = 0.0) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = amplitude * std::cos(2.0 * std::numbers::pi * f_hz * i / sample_rate_hz + phase);
  return x;
}

struct Resonance {
  double frequency_hz = 0.0;
  double radius = 0.0;
};

/// Denominator coefficients a(1..2K) of prod_k (1 - 2 r cos(w) z^-1 + r^2 z^-2),
/// in the 1 + sum a(i) z^-i convention.
inline std::vector<double> AllPoleCoefficients(std::span<const Resonance> poles,
                                               double sample_rate_hz) {
  std::vector<double> poly{1.0};
  for (const auto &p : poles) {
    const double w = 2.0 * std::numbers::pi * p.frequency_hz / sample_rate_hz;
    const double section[3] = {1.0, -2.0 * p.radius * std::cos(w), p.radius * p.radius};
    std::vector<double> next(poly.size() + 2, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i)
      for (std::size_t j = 0; j < 3; ++j) next[i + j] += poly[i] * section[j];
    poly = std::move(next);
  }
  return {poly.begin() + 1, poly.end()};
}

/// x(n) = e(n) - sum a(i) x(n-i).
inline std::vector<double> AllPoleFilter(std::span<const double> excitation,
                                         std::span<const double> a) {
  std::vector<double> x(excitation.size(), 0.0);
  for (std::size_t n = 0; n < x.size(); ++n) {
    double acc = excitation[n];
    for (std::size_t i = 1; i <= a.size() && i <= n; ++i) acc -= a[i - 1] * x[n - i];
    x[n] = acc;
  }
  return x;
}

inline void NormalizePeak(std::vector<double> &x, double peak) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  if (m > 0.0)
    for (double &v : x) v *= peak / m;
}

/// Pulse-train driven all-pole vowel, peak-normalized.
inline AudioSignal SyntheticVowel(std::span<const Resonance> formants, double seconds,
                                  int sample_rate_hz = 16000, double f0_hz = 100.0,
                                  double peak = 0.5) {
  const auto n = static_cast<std::size_t>(std::lround(seconds * sample_rate_hz));
  auto x = AllPoleFilter(PulseTrain(n, sample_rate_hz, f0_hz),
                         AllPoleCoefficients(formants, sample_rate_hz));
  NormalizePeak(x, peak);
  return AudioSignal(std::move(x), sample_rate_hz);
}

/// Noise driven (whispered) all-pole signal, peak-normalized.
inline AudioSignal WhisperedVowel(std::span<const Resonance> formants, double seconds,
                                  std::uint64_t seed, int sample_rate_hz = 16000,
                                  double peak = 0.5) {
  const auto n = static_cast<std::size_t>(std::lround(seconds * sample_rate_hz));
  auto x = AllPoleFilter(WhiteNoise(n, seed), AllPoleCoefficients(formants, sample_rate_hz));
  NormalizePeak(x, peak);
  return AudioSignal(std::move(x), sample_rate_hz);
}

}  // namespace vocalaffect::synth

#endif  // VOCALAFFECT_SYNTH_HPP_
