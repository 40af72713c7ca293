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

#ifndef VOCALAFFECT_TEO_HPP_
#define VOCALAFFECT_TEO_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vocalaffect/error.hpp"
#include "vocalaffect/lpc.hpp"
#include "vocalaffect/signal.hpp"

namespace vocalaffect {

/// y(n) = x(n)^2 - x(n+1) x(n-1) for n = 1..len-2. Output is two samples
/// shorter than the input.
inline std::vector<double> TeagerEnergy(std::span<const double> x) {
  if (x.size() < 3)
    throw Error(ErrorCode::kSequenceTooShort, std::to_string(x.size()) + " samples");
  std::vector<double> y(x.size() - 2);
  for (std::size_t n = 1; n + 1 < x.size(); ++n)
    y[n - 1] = x[n] * x[n] - x[n + 1] * x[n - 1];
  return y;
}

// Critical-band rate, z = 7 asinh(f / 650).
inline double HzToBark(double f_hz) { return 7.0 * std::asinh(f_hz / 650.0); }
inline double BarkToHz(double bark) { return 650.0 * std::sinh(bark / 7.0); }

struct Biquad {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0, a1 = 0.0, a2 = 0.0;
};

using SecondOrderSections = std::vector<Biquad>;

namespace teo_detail {

// Butterworth sections via the bilinear transform with prewarping.
// `order` must be even.
inline SecondOrderSections Butterworth(std::size_t order, double cutoff_hz,
                                       double sample_rate_hz, bool highpass) {
  if (order == 0 || order % 2 != 0)
    throw Error(ErrorCode::kInvalidArgument, "Butterworth order must be even");
  const double k = std::tan(std::numbers::pi * cutoff_hz / sample_rate_hz);
  const double k2 = k * k;
  SecondOrderSections sos;
  for (std::size_t i = 0; i < order / 2; ++i) {
    const double q = 2.0 * std::sin(std::numbers::pi * (2.0 * i + 1.0) / (2.0 * order));
    const double norm = 1.0 / (1.0 + q * k + k2);
    Biquad s;
    if (highpass) {
      s.b0 = norm;
      s.b1 = -2.0 * norm;
      s.b2 = norm;
    } else {
      s.b0 = k2 * norm;
      s.b1 = 2.0 * k2 * norm;
      s.b2 = k2 * norm;
    }
    s.a1 = 2.0 * (k2 - 1.0) * norm;
    s.a2 = (1.0 - q * k + k2) * norm;
    sos.push_back(s);
  }
  return sos;
}

}  // namespace teo_detail

inline SecondOrderSections ButterworthLowpass(std::size_t order, double cutoff_hz,
                                              double sample_rate_hz) {
  return teo_detail::Butterworth(order, cutoff_hz, sample_rate_hz, false);
}

inline SecondOrderSections ButterworthHighpass(std::size_t order, double cutoff_hz,
                                               double sample_rate_hz) {
  return teo_detail::Butterworth(order, cutoff_hz, sample_rate_hz, true);
}

/// Direct form II transposed, zero initial state.
inline void ApplySections(const SecondOrderSections &sos, std::vector<double> &x) {
  for (const Biquad &s : sos) {
    double z1 = 0.0, z2 = 0.0;
    for (double &v : x) {
      const double in = v;
      const double out = s.b0 * in + z1;
      z1 = s.b1 * in - s.a1 * out + z2;
      z2 = s.b2 * in - s.a2 * out;
      v = out;
    }
  }
}

/// Forward then time-reversed pass; zero phase, squared magnitude response.
inline std::vector<double> FiltFilt(const SecondOrderSections &sos,
                                    std::span<const double> x) {
  std::vector<double> y(x.begin(), x.end());
  ApplySections(sos, y);
  std::reverse(y.begin(), y.end());
  ApplySections(sos, y);
  std::reverse(y.begin(), y.end());
  return y;
}

struct TeoOptions {
  std::size_t n_bands = 16;
  double low_edge_hz = 100.0;
  double high_edge_hz = 8000.0;  // capped at Fs/2 - 100
  std::size_t filter_order = 8;  // per edge, before the forward-backward pass
  double frame_ms = 25.0;
  double scale_factor = 1000.0;
  // Frames whose R(0) is below this fraction of the loudest band frame are
  // left out of z1.
  double silence_floor = 1e-10;
};

struct CriticalBandBank {
  std::vector<std::pair<double, double>> edges_hz;
  std::vector<SecondOrderSections> filters;  // highpass(lo) then lowpass(hi)
  int sample_rate_hz = 0;

  std::size_t size() const noexcept { return edges_hz.size(); }
};

/// Band edges equally spaced in Bark between 100 Hz and min(8000, Fs/2 - 100).
/// Bands narrower than two bins of the TEO frame FFT are rejected.
inline CriticalBandBank MakeCriticalBandBank(int sample_rate_hz,
                                             const TeoOptions &opts = {}) {
  if (opts.n_bands == 0) throw Error(ErrorCode::kInvalidArgument, "n_bands must be >= 1");
  const double fs = sample_rate_hz;
  const double top = std::min(opts.high_edge_hz, fs / 2.0 - 100.0);
  if (!(top > opts.low_edge_hz))
    throw Error(ErrorCode::kInvalidArgument,
                "sample rate " + std::to_string(sample_rate_hz) + " too low for the band range");
  const std::size_t frame_len = std::max<std::size_t>(1, MsToSamples(opts.frame_ms, sample_rate_hz));
  const double min_width = 2.0 * fs / static_cast<double>(NextPowerOfTwo(frame_len));

  CriticalBandBank bank;
  bank.sample_rate_hz = sample_rate_hz;
  const double z_lo = HzToBark(opts.low_edge_hz);
  const double z_hi = HzToBark(top);
  double prev = opts.low_edge_hz;
  for (std::size_t b = 1; b <= opts.n_bands; ++b) {
    const double edge = b == opts.n_bands
                            ? top
                            : BarkToHz(z_lo + (z_hi - z_lo) * static_cast<double>(b) / opts.n_bands);
    if (edge - prev < min_width)
      throw Error(ErrorCode::kBandCountTooLarge,
                  std::to_string(opts.n_bands) + " bands leave a " +
                      std::to_string(edge - prev) + " Hz band (minimum " +
                      std::to_string(min_width) + " Hz)");
    bank.edges_hz.emplace_back(prev, edge);
    SecondOrderSections sos = ButterworthHighpass(opts.filter_order, prev, fs);
    const auto lp = ButterworthLowpass(opts.filter_order, edge, fs);
    sos.insert(sos.end(), lp.begin(), lp.end());
    bank.filters.push_back(std::move(sos));
    prev = edge;
  }
  return bank;
}

inline std::vector<std::vector<double>> CriticalBandFilter(const AudioSignal &signal,
                                                           const CriticalBandBank &bank) {
  std::vector<std::vector<double>> out;
  out.reserve(bank.size());
  for (const auto &sos : bank.filters) out.push_back(FiltFilt(sos, signal.samples()));
  return out;
}

inline std::vector<std::vector<double>> CriticalBandFilter(const AudioSignal &signal,
                                                           std::size_t n_bands) {
  TeoOptions opts;
  opts.n_bands = n_bands;
  return CriticalBandFilter(signal, MakeCriticalBandBank(signal.sample_rate_hz(), opts));
}

/// Teager energy of each critical-band output.
struct TeoProfile {
  std::vector<std::vector<double>> bands;
  std::vector<std::pair<double, double>> band_edges_hz;
  int sample_rate_hz = 0;
};

inline TeoProfile ComputeTeoProfile(const AudioSignal &signal, const TeoOptions &opts = {}) {
  if (signal.empty()) throw Error(ErrorCode::kEmptySignal, "teo profile");
  const CriticalBandBank bank = MakeCriticalBandBank(signal.sample_rate_hz(), opts);
  TeoProfile profile;
  profile.band_edges_hz = bank.edges_hz;
  profile.sample_rate_hz = signal.sample_rate_hz();
  for (const auto &band : CriticalBandFilter(signal, bank))
    profile.bands.push_back(TeagerEnergy(band));
  return profile;
}

/// R(j) / R(0) for j = 0..max_lag; all zeros when R(0) = 0.
inline std::vector<double> NormalizedAutocorrelation(std::span<const double> frame,
                                                     std::size_t max_lag,
                                                     double *r0_out = nullptr) {
  const auto r = Autocorrelate(frame, max_lag);
  if (r0_out) *r0_out = r[0];
  std::vector<double> out(r.lags.size(), 0.0);
  if (r[0] > 0.0)
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = r[j] / r[0];
  return out;
}

/// Piecewise-linear interpolation through the local maxima of |rho(j)|
/// (lag 0 and the last lag are always anchors), raised pointwise to |rho|.
inline std::vector<double> UpperEnvelope(std::span<const double> rho) {
  const std::size_t n = rho.size();
  std::vector<double> mag(n);
  for (std::size_t j = 0; j < n; ++j) mag[j] = std::abs(rho[j]);
  if (n < 3) return mag;
  std::vector<std::size_t> anchors{0};
  for (std::size_t j = 1; j + 1 < n; ++j)
    if (mag[j] >= mag[j - 1] && mag[j] >= mag[j + 1] && mag[j] > 0.0) anchors.push_back(j);
  anchors.push_back(n - 1);

  std::vector<double> env(n);
  for (std::size_t a = 0; a + 1 < anchors.size(); ++a) {
    const std::size_t j0 = anchors[a], j1 = anchors[a + 1];
    for (std::size_t j = j0; j <= j1; ++j) {
      const double t = j1 == j0 ? 0.0 : static_cast<double>(j - j0) / static_cast<double>(j1 - j0);
      env[j] = std::max(mag[j], (1.0 - t) * mag[j0] + t * mag[j1]);
    }
  }
  return env;
}

/// Trapezoid-rule area in lag units; within [0, env.size() - 1].
inline double TrapezoidArea(std::span<const double> env) {
  double area = 0.0;
  for (std::size_t j = 0; j + 1 < env.size(); ++j) area += 0.5 * (env[j] + env[j + 1]);
  return area;
}

struct FrameEnvelope {
  double area = 0.0;
  double r0 = 0.0;
};

inline FrameEnvelope EnvelopeAreaOfFrame(std::span<const double> frame) {
  FrameEnvelope out;
  const std::size_t max_lag = frame.size() / 2;
  if (max_lag == 0) return out;
  const auto rho = NormalizedAutocorrelation(frame, max_lag, &out.r0);
  if (out.r0 > 0.0) out.area = TrapezoidArea(UpperEnvelope(rho));
  return out;
}

struct TeoEnvelopeFeature {
  std::vector<std::vector<double>> areas;  // bands x frames, lag units
  std::vector<std::vector<bool>> voiced;   // frames that entered z1
  std::size_t lag_count = 0;               // max area (frame_len / 2)
  double z1 = 0.0;
};

/// Non-overlapping frames of round(frame_ms * Fs / 1000) Teager samples (a
/// band shorter than one frame contributes one zero-padded frame). z1 is
/// scale_factor times the mean area/lag_count over voiced band frames.
inline TeoEnvelopeFeature EnvelopeAreaFeature(const TeoProfile &profile,
                                              const TeoOptions &opts = {}) {
  if (!(opts.frame_ms > 0.0)) throw Error(ErrorCode::kInvalidArgument, "frame_ms must be positive");
  const std::size_t frame_len = MsToSamples(opts.frame_ms, profile.sample_rate_hz);
  if (frame_len < 2) throw Error(ErrorCode::kInvalidArgument, "TEO frame shorter than 2 samples");

  TeoEnvelopeFeature feature;
  feature.lag_count = frame_len / 2;
  std::vector<std::vector<double>> r0s;
  double loudest = 0.0;
  for (const auto &band : profile.bands) {
    std::vector<double> areas, energies;
    const std::size_t n_frames = std::max<std::size_t>(1, band.size() / frame_len);
    std::vector<double> frame(frame_len);
    for (std::size_t f = 0; f < n_frames; ++f) {
      std::fill(frame.begin(), frame.end(), 0.0);
      for (std::size_t n = 0; n < frame_len && f * frame_len + n < band.size(); ++n)
        frame[n] = band[f * frame_len + n];
      const FrameEnvelope env = EnvelopeAreaOfFrame(frame);
      areas.push_back(env.area);
      energies.push_back(env.r0);
      loudest = std::max(loudest, env.r0);
    }
    feature.areas.push_back(std::move(areas));
    r0s.push_back(std::move(energies));
  }
  if (!(loudest > 0.0))
    throw Error(ErrorCode::kAllSilentFrames, "every TEO frame has R(0) = 0");

  const double floor = loudest * opts.silence_floor;
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t b = 0; b < r0s.size(); ++b) {
    feature.voiced.emplace_back(r0s[b].size(), false);
    for (std::size_t f = 0; f < r0s[b].size(); ++f) {
      if (!(r0s[b][f] > 0.0) || r0s[b][f] < floor) continue;
      feature.voiced[b][f] = true;
      sum += feature.areas[b][f] / static_cast<double>(feature.lag_count);
      ++count;
    }
  }
  feature.z1 = opts.scale_factor * sum / static_cast<double>(count);
  return feature;
}

/// Critical bands -> Teager energy -> framed normalized autocorrelation
/// envelope area -> z1.
inline TeoEnvelopeFeature TeoCbAutoEnv(const AudioSignal &signal, const TeoOptions &opts = {}) {
  return EnvelopeAreaFeature(ComputeTeoProfile(signal, opts), opts);
}

}  // namespace vocalaffect

#endif  // VOCALAFFECT_TEO_HPP_
