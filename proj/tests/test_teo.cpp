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

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "vocalaffect/signal.hpp"
#include "vocalaffect/synth.hpp"
#include "vocalaffect/teo.hpp"

namespace vocalaffect {
namespace {

TEST(TeagerEnergy, ClosedFormForCosine) {
  for (double amp : {0.1, 1.0, 3.0})
    for (double omega : {0.05, std::numbers::pi / 2, 2.5}) {
      std::vector<double> x(200);
      for (std::size_t n = 0; n < x.size(); ++n) x[n] = amp * std::cos(omega * double(n));
      const auto y = TeagerEnergy(x);
      ASSERT_EQ(y.size(), x.size() - 2);
      const double expected = amp * amp * std::sin(omega) * std::sin(omega);
      for (double v : y) EXPECT_NEAR(v, expected, 1e-9);
    }
}

TEST(TeagerEnergy, ConstantIsZeroAndShortThrows) {
  for (double v : TeagerEnergy(std::vector<double>(50, 0.7))) EXPECT_EQ(v, 0.0);
  try {
    TeagerEnergy(std::vector<double>{1.0, 2.0});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kSequenceTooShort);
  }
}

TEST(TeagerEnergy, QuadraticInAmplitude) {
  const auto x = synth::WhiteNoise(500, 3);
  std::vector<double> x3(x);
  for (double &v : x3) v *= 3.0;
  const auto a = TeagerEnergy(x), b = TeagerEnergy(x3);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(b[i], 9.0 * a[i], 1e-12 * std::max(1.0, std::abs(b[i])));
}

TEST(Bark, InverseAndMonotone) {
  for (double f = 0; f < 8000; f += 123.0) EXPECT_NEAR(BarkToHz(HzToBark(f)), f, 1e-9);
  EXPECT_LT(HzToBark(100), HzToBark(200));
}

TEST(Butterworth, HalfPowerAtCutoff) {
  // Forward-backward squares the response, so a tone at the cutoff ends at -6 dB.
  const double fs = 16000, fc = 1000;
  const auto lp = ButterworthLowpass(8, fc, fs);
  const auto tone = synth::Tone(16000, fs, fc, 1.0);
  const auto y = FiltFilt(lp, tone);
  double ex = 0, ey = 0;
  for (std::size_t n = 4000; n < 12000; ++n) {
    ex += tone[n] * tone[n];
    ey += y[n] * y[n];
  }
  EXPECT_NEAR(ey / ex, 0.25, 0.01);
}

TEST(CriticalBands, EdgesContiguous) {
  const auto bank = MakeCriticalBandBank(16000);
  ASSERT_EQ(bank.size(), 16u);
  EXPECT_DOUBLE_EQ(bank.edges_hz.front().first, 100.0);
  EXPECT_DOUBLE_EQ(bank.edges_hz.back().second, 7900.0);
  for (std::size_t b = 1; b < bank.size(); ++b) {
    EXPECT_DOUBLE_EQ(bank.edges_hz[b].first, bank.edges_hz[b - 1].second);
    EXPECT_GT(bank.edges_hz[b].second - bank.edges_hz[b].first,
              bank.edges_hz[b - 1].second - bank.edges_hz[b - 1].first);
  }
}

TEST(CriticalBands, ToneEnergyLandsInItsBand) {
  const AudioSignal tone(synth::Tone(16000, 16000, 1000, 0.5), 16000);
  const auto bank = MakeCriticalBandBank(16000);
  const auto bands = CriticalBandFilter(tone, bank);
  double total = 0, own = 0;
  for (std::size_t b = 0; b < bands.size(); ++b) {
    const double e = Energy(bands[b]);
    total += e;
    if (bank.edges_hz[b].first <= 1000 && 1000 < bank.edges_hz[b].second) own = e;
  }
  EXPECT_GE(own / total, 0.9);
}

TEST(CriticalBands, SingleBandPassesSpeechRange) {
  const AudioSignal tone(synth::Tone(16000, 16000, 1000, 0.5), 16000);
  const auto bands = CriticalBandFilter(tone, 1);
  ASSERT_EQ(bands.size(), 1u);
  EXPECT_NEAR(Energy(bands[0]) / Energy(tone.samples()), 1.0, 0.01);
}

TEST(CriticalBands, TooManyBands) {
  TeoOptions opts;
  opts.n_bands = 200;
  try {
    MakeCriticalBandBank(16000, opts);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kBandCountTooLarge);
  }
}

TEST(EnvelopeArea, NormalizedAutocorrelationBounded) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g;
  std::uniform_int_distribution<int> len(4, 400);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> frame(static_cast<std::size_t>(len(rng)));
    for (double &v : frame) v = g(rng) * (trial % 7 + 1);
    const auto rho = NormalizedAutocorrelation(frame, frame.size() / 2);
    EXPECT_EQ(rho[0], 1.0);
    for (double v : rho) EXPECT_LE(std::abs(v), 1.0 + 1e-12);
  }
}

TEST(EnvelopeArea, EnvelopeCoversMagnitude) {
  const std::vector<double> rho{1.0, -0.2, 0.6, 0.1, -0.4, 0.0, 0.3};
  const auto env = UpperEnvelope(rho);
  for (std::size_t j = 0; j < rho.size(); ++j) EXPECT_GE(env[j], std::abs(rho[j]));
  EXPECT_EQ(env[0], 1.0);
  EXPECT_NEAR(env[1], 0.8, 1e-12);  // linear between 1.0 at lag 0 and 0.6 at lag 2
  EXPECT_DOUBLE_EQ(TrapezoidArea(std::vector<double>{1, 1, 1}), 2.0);
}

TEST(EnvelopeArea, ToneBeatsNoise) {
  const std::size_t len = 400;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(0, 2 * std::numbers::pi);
    const auto tone = synth::Tone(len, 16000, 500, 1.0, phase(rng));
    const auto noise = synth::WhiteNoise(len, seed);
    const double a_tone = EnvelopeAreaOfFrame(tone).area;
    const double a_noise = EnvelopeAreaOfFrame(noise).area;
    EXPECT_GT(a_tone, a_noise) << "seed " << seed;
    EXPECT_GT(a_tone, 0.5 * double(len / 2));
    EXPECT_LE(a_tone, double(len / 2));
  }
}

TEST(EnvelopeArea, FeatureShapeVoicingAndScale) {
  const AudioSignal tone(synth::Tone(16000, 16000, 1000, 0.5), 16000);
  const auto feat = TeoCbAutoEnv(tone);
  EXPECT_EQ(feat.areas.size(), 16u);
  EXPECT_EQ(feat.lag_count, 200u);
  EXPECT_GT(feat.z1, 0.0);
  EXPECT_LE(feat.z1, 1000.0);
  EXPECT_NEAR(TeoCbAutoEnv(tone.Scaled(2.0)).z1, feat.z1, 1e-6 * feat.z1);

  const AudioSignal noise(synth::WhiteNoise(16000, 1, 0.1), 16000);
  EXPECT_GT(feat.z1, TeoCbAutoEnv(noise).z1);
}

TEST(EnvelopeArea, AllSilentThrows) {
  try {
    TeoCbAutoEnv(AudioSignal(std::vector<double>(4000, 0.0), 16000));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kAllSilentFrames);
  }
}

}  // namespace
}  // namespace vocalaffect
