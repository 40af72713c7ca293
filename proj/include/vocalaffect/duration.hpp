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

#ifndef VOCALAFFECT_DURATION_HPP_
#define VOCALAFFECT_DURATION_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "vocalaffect/error.hpp"
#include "vocalaffect/fft.hpp"
#include "vocalaffect/formants.hpp"
#include "vocalaffect/signal.hpp"

namespace vocalaffect {

enum class PhonemeClass { kSilence, kVowel, kSemivowel, kConsonant };

inline std::string_view PhonemeClassName(PhonemeClass c) {
  switch (c) {
    case PhonemeClass::kSilence: return "silence";
    case PhonemeClass::kVowel: return "vowel";
    case PhonemeClass::kSemivowel: return "semivowel";
    case PhonemeClass::kConsonant: return "consonant";
  }
  return "?";
}

struct PhonemeClassTrack {
  std::vector<PhonemeClass> labels;
  double frame_hop_s = 0.0;
};

/// Frame energy plus the two consonant bands, all from the same windowed frame.
struct FrameBandEnergy {
  double total = 0.0;  // sum of squared windowed samples
  double low = 0.0;    // spectral energy in [0, 300] Hz
  double mid = 0.0;    // spectral energy in [640, 2800] Hz
  double spectral_total = 0.0;
};

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  bool Contains(double v) const { return v >= lo && v <= hi; }
};

struct PhonemeRules {
  std::size_t vowel_min_formants = 3;
  double vowel_max_f1_hz = 1000.0;
  Range semivowel_f2_f1{300.0, 1200.0};
  Range semivowel_f3_f2{200.0, 1500.0};
  Range semivowel_f4_f2{800.0, 2800.0};
  Range consonant_low_band{0.0, 300.0};
  Range consonant_mid_band{640.0, 2800.0};
  // Share of spectral energy the two consonant bands must hold.
  double consonant_band_share = 0.5;
  double energy_floor_db = -60.0;
  // The vowel and semivowel rules only count sharp resonances inside the usual
  // formant region; broad noise poles and fricative poles above it are
  // ignored. Infinity disables either gate.
  double max_formant_bandwidth_hz = 600.0;
  double max_formant_hz = 5000.0;
};

inline std::vector<FrameBandEnergy> BandEnergies(const FrameSequence &frames,
                                                 const PhonemeRules &rules = {}) {
  const std::size_t fft_size = NextPowerOfTwo(frames.frame_length);
  const double bin_hz = frames.sample_rate_hz / static_cast<double>(fft_size);
  std::vector<FrameBandEnergy> out;
  out.reserve(frames.size());
  for (const auto &frame : frames.frames) {
    FrameBandEnergy e;
    e.total = Energy(frame);
    const auto power = PowerSpectrum(frame, fft_size);
    for (std::size_t k = 0; k < power.size(); ++k) {
      const double f = k * bin_hz;
      e.spectral_total += power[k];
      if (rules.consonant_low_band.Contains(f)) e.low += power[k];
      if (rules.consonant_mid_band.Contains(f)) e.mid += power[k];
    }
    out.push_back(e);
  }
  return out;
}

/// `energy_floor_db` below the loudest frame, as a linear energy.
inline double RelativeEnergyFloor(const std::vector<FrameBandEnergy> &energies,
                                  double floor_db) {
  double peak = 0.0;
  for (const auto &e : energies) peak = std::max(peak, e.total);
  return peak * std::pow(10.0, floor_db / 10.0);
}

// Priority: silence, vowel, semivowel, consonant (band rule), consonant
// (fallback for any remaining speech frame).
inline PhonemeClassTrack ClassifyFrames(const std::vector<FormantSet> &formant_track,
                                        const std::vector<FrameBandEnergy> &energies,
                                        double energy_floor, double frame_hop_s,
                                        const PhonemeRules &rules = {}) {
  if (formant_track.size() != energies.size())
    throw Error(ErrorCode::kTrackLengthMismatch,
                std::to_string(formant_track.size()) + " formant frames vs " +
                    std::to_string(energies.size()) + " energy frames");
  PhonemeClassTrack track;
  track.frame_hop_s = frame_hop_s;
  track.labels.reserve(energies.size());
  FormantSet f;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    const auto &e = energies[i];
    f.formants.clear();
    for (const Formant &cand : formant_track[i].formants)
      if (cand.bandwidth_hz <= rules.max_formant_bandwidth_hz && cand.frequency_hz <= rules.max_formant_hz)
        f.formants.push_back(cand);
    if (e.total <= 0.0 || e.total < energy_floor) {
      track.labels.push_back(PhonemeClass::kSilence);
    } else if (f.size() >= rules.vowel_min_formants &&
               f[0].frequency_hz < rules.vowel_max_f1_hz) {
      track.labels.push_back(PhonemeClass::kVowel);
    } else if (f.size() >= 4 &&
               rules.semivowel_f2_f1.Contains(f[1].frequency_hz - f[0].frequency_hz) &&
               rules.semivowel_f3_f2.Contains(f[2].frequency_hz - f[1].frequency_hz) &&
               rules.semivowel_f4_f2.Contains(f[3].frequency_hz - f[1].frequency_hz)) {
      track.labels.push_back(PhonemeClass::kSemivowel);
    } else if (f.size() < 3 && e.spectral_total > 0.0 &&
               (e.low + e.mid) / e.spectral_total >= rules.consonant_band_share) {
      track.labels.push_back(PhonemeClass::kConsonant);
    } else {
      track.labels.push_back(PhonemeClass::kConsonant);
    }
  }
  return track;
}

struct DurationSummary {
  double vowel_s = 0.0;
  double semivowel_s = 0.0;
  double consonant_s = 0.0;
  double total_speech_s = 0.0;
  // No word segmentation exists here, so this equals total_speech_s.
  double mean_word_duration_s = 0.0;
};

inline DurationSummary SummarizeDurations(const PhonemeClassTrack &track) {
  std::size_t vowels = 0, semivowels = 0, consonants = 0;
  for (PhonemeClass c : track.labels) {
    if (c == PhonemeClass::kVowel) ++vowels;
    else if (c == PhonemeClass::kSemivowel) ++semivowels;
    else if (c == PhonemeClass::kConsonant) ++consonants;
  }
  DurationSummary d;
  d.vowel_s = static_cast<double>(vowels) * track.frame_hop_s;
  d.semivowel_s = static_cast<double>(semivowels) * track.frame_hop_s;
  d.consonant_s = static_cast<double>(consonants) * track.frame_hop_s;
  d.total_speech_s = d.vowel_s + d.semivowel_s + d.consonant_s;
  d.mean_word_duration_s = d.total_speech_s;
  return d;
}

/// Formant track and band energies on the shared LPC framing, then labels.
inline PhonemeClassTrack PhonemeTrack(const AudioSignal &signal,
                                      const std::vector<FormantSet> &formants,
                                      const LpcAnalysisOptions &lpc = {},
                                      const PhonemeRules &rules = {}) {
  const FrameSequence frames = FrameSignal(signal, lpc.frame_ms, lpc.hop_ms, WindowKind::kHamming);
  const auto energies = BandEnergies(frames, rules);
  return ClassifyFrames(formants, energies, RelativeEnergyFloor(energies, rules.energy_floor_db),
                        frames.hop_s(), rules);
}

inline PhonemeClassTrack PhonemeTrack(const AudioSignal &signal,
                                      const LpcAnalysisOptions &lpc = {},
                                      const PhonemeRules &rules = {}) {
  return PhonemeTrack(signal, FormantsPerFrame(signal, lpc), lpc, rules);
}

}  // namespace vocalaffect

#endif  // VOCALAFFECT_DURATION_HPP_
