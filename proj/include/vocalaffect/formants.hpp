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

#ifndef VOCALAFFECT_FORMANTS_HPP_
#define VOCALAFFECT_FORMANTS_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "vocalaffect/error.hpp"
#include "vocalaffect/lpc.hpp"
#include "vocalaffect/roots.hpp"
#include "vocalaffect/signal.hpp"

namespace vocalaffect {

/// z-plane poles of 1 / A(z).
struct PoleSet {
  std::vector<std::complex<double>> roots;
};

struct Formant {
  double frequency_hz = 0.0;
  double bandwidth_hz = 0.0;
  double radius = 0.0;
};

/// Ascending by frequency.
struct FormantSet {
  std::vector<Formant> formants;

  std::size_t size() const noexcept { return formants.size(); }
  bool empty() const noexcept { return formants.empty(); }
  const Formant &operator[](std::size_t i) const { return formants[i]; }
};

/// Poles of the LPC synthesis filter. A(z) is a polynomial of degree d in
/// z^-1 (d = index of the last non-zero coefficient); multiplying by z^d gives
/// a monic polynomial in z whose d roots are the poles. An all-zero model
/// (A = 1) has no poles.
inline PoleSet PolynomialRoots(const LpcModel &model,
                               const RootFinderOptions &opts = {}) {
  if (model.order() < 2)
    throw Error(ErrorCode::kInvalidArgument, "root extraction needs order >= 2");
  std::size_t degree = model.order();
  while (degree > 0 && model.coefficients[degree - 1] == 0.0) --degree;
  std::vector<double> monic(degree + 1);
  monic[0] = 1.0;
  for (std::size_t i = 1; i <= degree; ++i) monic[i] = model.coefficients[i - 1];
  return PoleSet{MonicPolynomialRoots(monic, opts)};
}

struct FormantRules {
  double min_radius = 0.7;
  double guard_hz = 50.0;
  // Poles with |Im| below this are treated as real.
  double real_tolerance = 1e-10;
};

inline double PoleFrequencyHz(std::complex<double> pole, double sample_rate_hz) {
  return sample_rate_hz / (2.0 * std::numbers::pi) * std::atan2(pole.imag(), pole.real());
}

inline double PoleBandwidthHz(double radius, double sample_rate_hz) {
  return -(sample_rate_hz / std::numbers::pi) * std::log(radius);
}

/// One formant per upper-half-plane pole with radius in [min_radius, 1) and
/// frequency inside (guard, Fs/2 - guard).
inline FormantSet PolesToFormants(const PoleSet &poles, double sample_rate_hz,
                                  const FormantRules &rules = {}) {
  FormantSet out;
  const double nyquist = sample_rate_hz / 2.0;
  for (const auto &c : poles.roots) {
    if (c.imag() <= rules.real_tolerance) continue;
    const double r = std::abs(c);
    if (r < rules.min_radius || r >= 1.0) continue;
    const double f = PoleFrequencyHz(c, sample_rate_hz);
    if (f <= rules.guard_hz || f >= nyquist - rules.guard_hz) continue;
    out.formants.push_back({f, PoleBandwidthHz(r, sample_rate_hz), r});
  }
  std::sort(out.formants.begin(), out.formants.end(),
            [](const Formant &a, const Formant &b) {
              return a.frequency_hz < b.frequency_hz;
            });
  return out;
}

struct LpcAnalysisOptions {
  double frame_ms = 30.0;
  double hop_ms = 15.0;
  std::size_t order = 12;
  double pre_emphasis = 0.0;  // 0 disables; 0.97 is the usual speech setting
  FormantRules rules;
};

/// Formant estimate for a single windowed frame; an empty set when the frame
/// is numerically degenerate (silence, singular autocorrelation).
inline FormantSet FormantsOfFrame(std::span<const double> frame,
                                  double sample_rate_hz, std::size_t order,
                                  const FormantRules &rules = {}) {
  if (order >= frame.size())
    throw Error(ErrorCode::kInvalidArgument, "LPC order must be below frame length");
  const auto r = Autocorrelate(frame, order);
  LpcModel model;
  try {
    model = LevinsonDurbin(r, order);
  } catch (const Error &e) {
    if (e.code() == ErrorCode::kSingularAutocorrelation) return {};
    throw;
  }
  return PolesToFormants(PolynomialRoots(model), sample_rate_hz, rules);
}

/// Pre-emphasis -> Hamming frames -> LPC -> poles -> formants, per frame.
inline std::vector<FormantSet> FormantsPerFrame(const AudioSignal &signal,
                                                const LpcAnalysisOptions &opts = {}) {
  if (signal.empty()) throw Error(ErrorCode::kEmptySignal, "formant analysis");
  const std::vector<double> emphasized =
      PreEmphasize(signal.samples(), opts.pre_emphasis);
  const int fs = signal.sample_rate_hz();
  const FrameSequence frames =
      FrameSignal(emphasized, fs, MsToSamples(opts.frame_ms, fs),
                  std::max<std::size_t>(1, MsToSamples(opts.hop_ms, fs)),
                  WindowKind::kHamming);
  std::vector<FormantSet> track;
  track.reserve(frames.size());
  for (const auto &frame : frames.frames)
    track.push_back(FormantsOfFrame(frame, fs, opts.order, opts.rules));
  return track;
}

/// Per-index medians over "voiced" frames (those with at least
/// `min_formants` formants). Index k holds the median of the k-th formant
/// across voiced frames that have one.
struct FormantSummary {
  std::vector<double> frequency_hz;
  std::vector<double> bandwidth_hz;
  std::size_t voiced_frames = 0;

  bool has_f1() const noexcept { return !frequency_hz.empty(); }
  double f1_hz() const { return frequency_hz.empty() ? 0.0 : frequency_hz[0]; }
};

inline double Median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + mid);
  return 0.5 * (lower + upper);
}

inline FormantSummary SummarizeFormants(const std::vector<FormantSet> &track,
                                        std::size_t min_formants = 3) {
  FormantSummary summary;
  std::vector<std::vector<double>> freqs, bws;
  for (const auto &set : track) {
    if (set.size() < min_formants) continue;
    ++summary.voiced_frames;
    if (freqs.size() < set.size()) {
      freqs.resize(set.size());
      bws.resize(set.size());
    }
    for (std::size_t k = 0; k < set.size(); ++k) {
      freqs[k].push_back(set[k].frequency_hz);
      bws[k].push_back(set[k].bandwidth_hz);
    }
  }
  for (std::size_t k = 0; k < freqs.size(); ++k) {
    summary.frequency_hz.push_back(Median(freqs[k]));
    summary.bandwidth_hz.push_back(Median(bws[k]));
  }
  return summary;
}

}  // namespace vocalaffect

#endif  // VOCALAFFECT_FORMANTS_HPP_
