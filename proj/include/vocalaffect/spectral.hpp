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

#ifndef VOCALAFFECT_SPECTRAL_HPP_
#define VOCALAFFECT_SPECTRAL_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "vocalaffect/error.hpp"
#include "vocalaffect/fft.hpp"
#include "vocalaffect/signal.hpp"

namespace vocalaffect {

/// Mel(f) = 2595 log10(1 + f / 700).
inline double MelScale(double f_hz) {
  if (f_hz < 0.0) throw Error(ErrorCode::kNegativeFrequency, std::to_string(f_hz));
  return 2595.0 * std::log10(1.0 + f_hz / 700.0);
}

inline double InverseMelScale(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

/// Triangular filters with edges equally spaced on the mel axis from 0 to
/// Fs/2. Edges are snapped to FFT bins, so every filter peaks at exactly 1.
class MelFilterbank {
 public:
  MelFilterbank(std::size_t n_filters, std::size_t fft_size, double sample_rate_hz)
      : fft_size_(fft_size) {
    if (n_filters == 0) throw Error(ErrorCode::kInvalidArgument, "no mel filters");
    const std::size_t n_bins = fft_size / 2 + 1;
    const double bin_hz = sample_rate_hz / static_cast<double>(fft_size);
    const double mel_max = MelScale(sample_rate_hz / 2.0);
    std::vector<std::size_t> points(n_filters + 2);
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double mel = mel_max * static_cast<double>(i) / (n_filters + 1);
      points[i] = std::min<std::size_t>(
          n_bins - 1, static_cast<std::size_t>(std::lround(InverseMelScale(mel) / bin_hz)));
      if (i > 0 && points[i] <= points[i - 1])
        throw Error(ErrorCode::kInvalidArgument,
                    std::to_string(n_filters) + " mel filters do not fit in " +
                        std::to_string(fft_size) + "-point FFT");
    }
    weights_.assign(n_filters, std::vector<double>(n_bins, 0.0));
    edges_ = points;
    for (std::size_t m = 0; m < n_filters; ++m) {
      const double left = static_cast<double>(points[m]);
      const double centre = static_cast<double>(points[m + 1]);
      const double right = static_cast<double>(points[m + 2]);
      for (std::size_t k = points[m]; k <= points[m + 2]; ++k) {
        const double x = static_cast<double>(k);
        weights_[m][k] = x <= centre ? (x - left) / (centre - left)
                                     : (right - x) / (right - centre);
      }
    }
  }

  std::size_t num_filters() const noexcept { return weights_.size(); }
  std::size_t fft_size() const noexcept { return fft_size_; }
  const std::vector<std::vector<double>> &weights() const noexcept { return weights_; }
  /// Bin indices of the n_filters + 2 triangle vertices.
  const std::vector<std::size_t> &edges() const noexcept { return edges_; }

  std::vector<double> Apply(std::span<const double> power) const {
    std::vector<double> out(weights_.size(), 0.0);
    for (std::size_t m = 0; m < weights_.size(); ++m)
      for (std::size_t k = edges_[m]; k <= edges_[m + 2]; ++k)
        out[m] += weights_[m][k] * power[k];
    return out;
  }

 private:
  std::size_t fft_size_;
  std::vector<std::vector<double>> weights_;
  std::vector<std::size_t> edges_;
};

// Orthonormal DCT-II; the inverse is DCT-III with the same scaling.
inline std::vector<double> Dct2(std::span<const double> x, std::size_t n_out) {
  const std::size_t n = x.size();
  std::vector<double> out(n_out, 0.0);
  for (std::size_t k = 0; k < n_out; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      acc += x[i] * std::cos(std::numbers::pi * (i + 0.5) * k / static_cast<double>(n));
    out[k] = acc * std::sqrt((k == 0 ? 1.0 : 2.0) / static_cast<double>(n));
  }
  return out;
}

inline std::vector<double> InverseDct2(std::span<const double> c) {
  const std::size_t n = c.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k)
      acc += c[k] * std::sqrt((k == 0 ? 1.0 : 2.0) / static_cast<double>(n)) *
             std::cos(std::numbers::pi * (i + 0.5) * k / static_cast<double>(n));
    out[i] = acc;
  }
  return out;
}

struct SpectralOptions {
  double frame_ms = 30.0;
  double hop_ms = 15.0;
  std::size_t n_filters = 26;
  std::size_t n_coeffs = 13;
  double log_floor = 1e-10;
};

struct MfccMatrix {
  std::vector<std::vector<double>> coefficients;  // frames x n_coeffs
  std::size_t n_coeffs = 0;
  // Mean over every frame of coefficients 1..n_coeffs-1 (c0 excluded).
  double mean_mfcc = 0.0;

  std::size_t num_frames() const noexcept { return coefficients.size(); }
};

inline double MeanExcludingC0(const std::vector<std::vector<double>> &coeffs) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto &row : coeffs)
    for (std::size_t k = 1; k < row.size(); ++k) {
      sum += row[k];
      ++count;
    }
  return count ? sum / static_cast<double>(count) : 0.0;
}

/// Frame blocking (Hamming), power spectrum, mel filterbank, log, DCT-II.
inline MfccMatrix ComputeMfcc(const AudioSignal &signal,
                              const SpectralOptions &opts = {}) {
  if (opts.n_coeffs == 0 || opts.n_coeffs > opts.n_filters)
    throw Error(ErrorCode::kInvalidArgument, "need 0 < n_coeffs <= n_filters");
  if (signal.empty()) throw Error(ErrorCode::kEmptySignal, "mfcc");
  const int fs = signal.sample_rate_hz();
  const std::size_t frame_length = MsToSamples(opts.frame_ms, fs);
  if (signal.size() < frame_length)
    throw Error(ErrorCode::kSignalTooShort,
                std::to_string(signal.size()) + " samples, frame needs " +
                    std::to_string(frame_length));
  const FrameSequence frames =
      FrameSignal(signal, opts.frame_ms, opts.hop_ms, WindowKind::kHamming);
  const std::size_t fft_size = NextPowerOfTwo(frames.frame_length);
  const MelFilterbank bank(opts.n_filters, fft_size, fs);

  MfccMatrix out;
  out.n_coeffs = opts.n_coeffs;
  out.coefficients.reserve(frames.size());
  std::vector<double> log_energy(opts.n_filters);
  for (const auto &frame : frames.frames) {
    const auto energies = bank.Apply(PowerSpectrum(frame, fft_size));
    for (std::size_t m = 0; m < energies.size(); ++m)
      log_energy[m] = std::log(std::max(energies[m], opts.log_floor));
    out.coefficients.push_back(Dct2(log_energy, opts.n_coeffs));
  }
  out.mean_mfcc = MeanExcludingC0(out.coefficients);
  return out;
}

struct SpectralBandwidth {
  double f_min_hz = 0.0;
  double f_max_hz = 0.0;
  double bw_hz = 0.0;
};

/// Frame-averaged magnitude spectrum (Hamming frames, FFT of the next power
/// of two).
inline MagnitudeSpectrum AverageMagnitudeSpectrum(const AudioSignal &signal,
                                                  double frame_ms, double hop_ms) {
  const FrameSequence frames = FrameSignal(signal, frame_ms, hop_ms, WindowKind::kHamming);
  const std::size_t fft_size = NextPowerOfTwo(frames.frame_length);
  MagnitudeSpectrum avg;
  avg.bin_hz = signal.sample_rate_hz() / static_cast<double>(fft_size);
  avg.bins.assign(fft_size / 2 + 1, 0.0);
  for (const auto &frame : frames.frames) {
    const auto spec = ComputeMagnitudeSpectrum(frame, fft_size);
    for (std::size_t k = 0; k < avg.bins.size(); ++k) avg.bins[k] += spec.bins[k];
  }
  for (double &b : avg.bins) b /= static_cast<double>(frames.size());
  return avg;
}

/// Spectral peaks (local maxima of the averaged spectrum) within
/// `rel_threshold_db` of the strongest one form the frequency array;
/// F_min and F_max are its extremes and BW = F_max - F_min.
inline SpectralBandwidth VocalTractBandwidth(const AudioSignal &signal,
                                             double rel_threshold_db,
                                             const SpectralOptions &opts = {}) {
  if (!(rel_threshold_db < 0.0))
    throw Error(ErrorCode::kInvalidArgument, "threshold must be below 0 dB");
  if (signal.empty()) throw Error(ErrorCode::kEmptySignal, "bandwidth");
  const MagnitudeSpectrum avg = AverageMagnitudeSpectrum(signal, opts.frame_ms, opts.hop_ms);
  const auto &m = avg.bins;
  const double peak = *std::max_element(m.begin(), m.end());
  if (!(peak > 0.0)) throw Error(ErrorCode::kSilentSignal, "spectrum is all zero");
  const double floor = peak * std::pow(10.0, rel_threshold_db / 20.0);

  std::size_t lo = m.size(), hi = 0;
  for (std::size_t k = 0; k < m.size(); ++k) {
    const bool left_ok = k == 0 || m[k] >= m[k - 1];
    const bool right_ok = k + 1 == m.size() || m[k] >= m[k + 1];
    if (!(left_ok && right_ok) || m[k] < floor) continue;
    lo = std::min(lo, k);
    hi = std::max(hi, k);
  }
  SpectralBandwidth bw;
  bw.f_min_hz = avg.FrequencyOf(lo);
  bw.f_max_hz = avg.FrequencyOf(hi);
  bw.bw_hz = bw.f_max_hz - bw.f_min_hz;
  return bw;
}

}  // namespace vocalaffect

#endif  // VOCALAFFECT_SPECTRAL_HPP_
