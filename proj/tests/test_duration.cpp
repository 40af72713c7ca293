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

#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "vocalaffect/duration.hpp"
#include "vocalaffect/synth.hpp"
#include "vocalaffect/teo.hpp"

namespace vocalaffect {
namespace {

FormantSet Set(std::vector<double> fs) {
  FormantSet s;
  for (double f : fs) s.formants.push_back({f, 80.0, 0.95});
  return s;
}

FrameBandEnergy Loud() { return {1.0, 0.4, 0.4, 1.0}; }

TEST(ClassifyFrames, RulePriorities) {
  const auto track = ClassifyFrames(
      {Set({500, 1500, 2500}), Set({500, 1500, 2500}), Set({1200, 2000, 2600, 3300}), Set({}),
       Set({6000})},
      {Loud(), FrameBandEnergy{}, Loud(), Loud(), {1.0, 0.0, 0.0, 1.0}}, 1e-6, 0.015);
  ASSERT_EQ(track.labels.size(), 5u);
  EXPECT_EQ(track.labels[0], PhonemeClass::kVowel);
  EXPECT_EQ(track.labels[1], PhonemeClass::kSilence);
  EXPECT_EQ(track.labels[2], PhonemeClass::kSemivowel);
  EXPECT_EQ(track.labels[3], PhonemeClass::kConsonant);
  EXPECT_EQ(track.labels[4], PhonemeClass::kConsonant);
  EXPECT_DOUBLE_EQ(track.frame_hop_s, 0.015);
}

TEST(ClassifyFrames, SilenceAndMismatch) {
  const auto track = ClassifyFrames({Set({500, 1500, 2500}), Set({})}, {FrameBandEnergy{}, FrameBandEnergy{}}, 0.0,
                                    0.015);
  for (auto c : track.labels) EXPECT_EQ(c, PhonemeClass::kSilence);
  try {
    ClassifyFrames({Set({})}, {}, 0.0, 0.015);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kTrackLengthMismatch);
  }
}

TEST(ClassifyFrames, BroadOrHighPolesAreNotFormants) {
  auto with_bw = [](std::vector<std::pair<double, double>> fb) {
    FormantSet s;
    for (auto [f, b] : fb) s.formants.push_back({f, b, 0.8});
    return s;
  };
  const auto broad = with_bw({{500, 900}, {1500, 900}, {2500, 900}});
  const auto high = with_bw({{4100, 150}, {4600, 300}, {5400, 300}, {6300, 300}});
  const std::vector<FrameBandEnergy> e{Loud(), Loud()};
  auto gated = ClassifyFrames({broad, high}, e, 0.0, 0.015);
  EXPECT_EQ(gated.labels[0], PhonemeClass::kConsonant);
  EXPECT_EQ(gated.labels[1], PhonemeClass::kConsonant);

  PhonemeRules literal;
  literal.max_formant_bandwidth_hz = std::numeric_limits<double>::infinity();
  literal.max_formant_hz = std::numeric_limits<double>::infinity();
  auto raw = ClassifyFrames({broad, high}, e, 0.0, 0.015, literal);
  EXPECT_EQ(raw.labels[0], PhonemeClass::kVowel);
  EXPECT_EQ(raw.labels[1], PhonemeClass::kSemivowel);
}

TEST(ClassifyFrames, HissIsConsonant) {
  // 4-8 kHz band-limited noise stands in for /s/.
  auto noise = synth::WhiteNoise(16000, 8, 0.2);
  noise = FiltFilt(ButterworthHighpass(8, 4000, 16000), noise);
  const auto track = PhonemeTrack(AudioSignal(noise, 16000));
  std::size_t consonants = 0;
  for (auto c : track.labels) consonants += c == PhonemeClass::kConsonant;
  EXPECT_GT(consonants * 10, track.labels.size() * 9);
}

TEST(SummarizeDurations, CountsTimesHop) {
  PhonemeClassTrack t;
  t.frame_hop_s = 0.015;
  t.labels.assign(100, PhonemeClass::kVowel);
  auto d = SummarizeDurations(t);
  EXPECT_NEAR(d.vowel_s, 1.5, 1e-12);
  EXPECT_NEAR(d.total_speech_s, 1.5, 1e-12);
  EXPECT_EQ(d.mean_word_duration_s, d.total_speech_s);

  const auto empty = SummarizeDurations({});
  EXPECT_EQ(empty.total_speech_s, 0.0);
  EXPECT_EQ(empty.vowel_s, 0.0);

  t.labels = {PhonemeClass::kSilence, PhonemeClass::kConsonant, PhonemeClass::kSemivowel, PhonemeClass::kVowel};
  d = SummarizeDurations(t);
  EXPECT_EQ(d.total_speech_s, d.vowel_s + d.semivowel_s + d.consonant_s);
  EXPECT_NEAR(d.total_speech_s, 0.045, 1e-12);
}

TEST(PhonemeTrack, VowelDominatesAndDurationScalesWithLength) {
  using synth::Resonance;
  const std::vector<Resonance> poles{{500, .97}, {1500, .97}, {2500, .97}};
  const auto one = SummarizeDurations(PhonemeTrack(synth::SyntheticVowel(poles, 1.0)));
  const auto two = SummarizeDurations(PhonemeTrack(synth::SyntheticVowel(poles, 2.0)));
  EXPECT_GT(one.vowel_s, 0.8 * one.total_speech_s);
  EXPECT_NEAR(two.total_speech_s / one.total_speech_s, 2.0, 0.05);
}

TEST(PhonemeTrack, SilenceHasNoSpeech) {
  const auto d = SummarizeDurations(PhonemeTrack(AudioSignal(std::vector<double>(8000, 0.0), 16000)));
  EXPECT_EQ(d.total_speech_s, 0.0);
}

}  // namespace
}  // namespace vocalaffect
