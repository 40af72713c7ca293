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

#ifndef VOCALAFFECT_DEMO_CORPUS_HPP_
#define VOCALAFFECT_DEMO_CORPUS_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "vocalaffect/classifier.hpp"
#include "vocalaffect/synth.hpp"
#include "vocalaffect/wav.hpp"

namespace vocalaffect::synth {

/// Recipe for one synthetic utterance of the demo corpus.
struct DemoUtterance {
  std::string file_name;  // EMO-DB style
  Emotion emotion;
  std::vector<Resonance> formants;
  bool voiced;
  double seconds;
  double f0_hz;        // voiced only
  std::uint64_t seed;  // whispered only
};

/// Two utterances per class. Voiced pulse trains carry high Teager energy
/// (anger, disgust, split by F1); the remaining classes are whispered and
/// differ in resonance spread, length and spectral tilt.
inline std::vector<DemoUtterance> DemoCorpusRecipes() {
  const std::vector<Resonance> open{{700, .97}, {1500, .97}, {2500, .97}};
  const std::vector<Resonance> close{{400, .97}, {1500, .97}, {2500, .97}};
  const std::vector<Resonance> wide{{700, .97}, {2000, .97}, {3800, .99}};
  const std::vector<Resonance> mid{{500, .97}, {1500, .97}, {2500, .97}};
  const std::vector<Resonance> low{{300, .97}, {900, .97}, {2200, .97}};
  return {
      {"03a01Wa.wav", Emotion::kAnger, open, true, 1.0, 120.0, 0},
      {"08a02Wa.wav", Emotion::kAnger, open, true, 1.0, 150.0, 0},
      {"03a01Ea.wav", Emotion::kDisgust, close, true, 1.0, 110.0, 0},
      {"08a02Ea.wav", Emotion::kDisgust, close, true, 1.0, 140.0, 0},
      {"03a01Fa.wav", Emotion::kHappy, wide, false, 1.0, 0.0, 11},
      {"08a02Fa.wav", Emotion::kHappy, wide, false, 1.0, 0.0, 12},
      {"03a01Ta.wav", Emotion::kSad, mid, false, 2.0, 0.0, 21},
      {"08a02Ta.wav", Emotion::kSad, mid, false, 2.0, 0.0, 22},
      {"03a01La.wav", Emotion::kBoredom, low, false, 1.0, 0.0, 31},
      {"08a02La.wav", Emotion::kBoredom, low, false, 1.0, 0.0, 32},
      {"03a01Na.wav", Emotion::kNeutral, mid, false, 1.0, 0.0, 41},
      {"08a02Na.wav", Emotion::kNeutral, mid, false, 1.0, 0.0, 42},
  };
}

inline AudioSignal RenderDemoUtterance(const DemoUtterance &u, int sample_rate_hz = 16000) {
  return u.voiced ? SyntheticVowel(u.formants, u.seconds, sample_rate_hz, u.f0_hz)
                  : WhisperedVowel(u.formants, u.seconds, u.seed, sample_rate_hz);
}

/// Writes the twelve demo WAVs into `dir` (created if needed); returns paths.
inline std::vector<std::string> WriteDemoCorpus(const std::filesystem::path &dir,
                                                int sample_rate_hz = 16000) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> paths;
  for (const auto &u : DemoCorpusRecipes()) {
    const auto path = dir / u.file_name;
    SaveWav(path.string(), RenderDemoUtterance(u, sample_rate_hz));
    paths.push_back(path.string());
  }
  return paths;
}

}  // namespace vocalaffect::synth

#endif  // VOCALAFFECT_DEMO_CORPUS_HPP_
