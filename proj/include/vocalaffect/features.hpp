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

#ifndef VOCALAFFECT_FEATURES_HPP_
#define VOCALAFFECT_FEATURES_HPP_

#include <string>
#include <utility>

#include "vocalaffect/classifier.hpp"
#include "vocalaffect/duration.hpp"
#include "vocalaffect/error.hpp"
#include "vocalaffect/formants.hpp"
#include "vocalaffect/signal.hpp"
#include "vocalaffect/spectral.hpp"
#include "vocalaffect/teo.hpp"

namespace vocalaffect {

/// Every knob of the five extractors. LPC, MFCC, bandwidth and duration
/// share one framing (lpc.frame_ms / lpc.hop_ms).
struct AnalysisParams {
  LpcAnalysisOptions lpc;
  SpectralOptions spectral;
  PhonemeRules phoneme;
  TeoOptions teo;
  double bandwidth_threshold_db = -20.0;

  void SetAnalysisFrame(double frame_ms) {
    lpc.frame_ms = spectral.frame_ms = frame_ms;
    lpc.hop_ms = spectral.hop_ms = frame_ms / 2.0;
  }
};

/// Everything ExtractFeatures computes along the way.
struct FeatureDetails {
  FeatureVector vector;
  SpectralBandwidth bandwidth;
  FormantSummary formants;
  DurationSummary durations;
  std::size_t mfcc_frames = 0;
  std::size_t teo_voiced_frames = 0;
};

namespace features_detail {

template <typename Fn>
auto InStage(const char *stage, Fn &&fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error &e) {
    if (!e.stage().empty()) throw;
    throw e.WithStage(stage);
  }
}

}  // namespace features_detail

inline FeatureDetails ExtractFeatureDetails(const AudioSignal &signal,
                                            const AnalysisParams &params = {}) {
  using features_detail::InStage;
  if (signal.empty()) throw Error(ErrorCode::kEmptySignal, "no samples", "input");
  FeatureDetails d;
  d.bandwidth = InStage("spectral", [&] {
    return VocalTractBandwidth(signal, params.bandwidth_threshold_db, params.spectral);
  });
  const MfccMatrix mfcc = InStage("spectral", [&] { return ComputeMfcc(signal, params.spectral); });
  d.mfcc_frames = mfcc.num_frames();
  const auto track = InStage("formant", [&] { return FormantsPerFrame(signal, params.lpc); });
  d.formants = SummarizeFormants(track, 3);
  d.durations = InStage("duration", [&] {
    return SummarizeDurations(PhonemeTrack(signal, track, params.lpc, params.phoneme));
  });
  const TeoEnvelopeFeature teo = InStage("teo", [&] { return TeoCbAutoEnv(signal, params.teo); });
  for (const auto &band : teo.voiced)
    for (bool v : band) d.teo_voiced_frames += v ? 1 : 0;

  d.vector.z1 = teo.z1;
  d.vector.f1_hz = d.formants.f1_hz();
  d.vector.vt_bw = d.bandwidth.bw_hz;
  d.vector.duration_s = d.durations.total_speech_s;
  d.vector.mfcc_mean = mfcc.mean_mfcc;
  return d;
}

inline FeatureVector ExtractFeatures(const AudioSignal &signal, const AnalysisParams &params = {}) {
  return ExtractFeatureDetails(signal, params).vector;
}

}  // namespace vocalaffect

#endif  // VOCALAFFECT_FEATURES_HPP_
