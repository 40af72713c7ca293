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
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "vocalaffect/lpc.hpp"
#include "vocalaffect/signal.hpp"

namespace vocalaffect {
namespace {

// x(n) = -sum a(i) x(n-i) + e(n) with a stable a.
std::vector<double> ArProcess(const std::vector<double> &a, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<double> x(n + 500, 0.0);
  for (std::size_t t = 0; t < x.size(); ++t) {
    double v = g(rng);
    for (std::size_t i = 0; i < a.size() && i < t; ++i) v -= a[i] * x[t - 1 - i];
    x[t] = v;
  }
  return {x.begin() + 500, x.end()};
}

// Stable AR(10) with speech-like resonances (innovation/signal ratio about 0.02).
std::vector<double> StableAr10() {
  std::vector<double> poly{1.0};
  const double pairs[5][2] = {{0.98, 0.2}, {0.96, 0.6}, {0.95, 1.2}, {0.93, 1.9}, {0.9, 2.6}};
  for (const auto &p : pairs) {
    const double b1 = -2.0 * p[0] * std::cos(p[1]), b2 = p[0] * p[0];
    std::vector<double> next(poly.size() + 2, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i];
      next[i + 1] += b1 * poly[i];
      next[i + 2] += b2 * poly[i];
    }
    poly = next;
  }
  return {poly.begin() + 1, poly.end()};
}

TEST(Autocorrelate, HandExample) {
  const std::vector<double> x{1, 2, 3};
  const auto r = Autocorrelate(x, 2);
  EXPECT_EQ(r.lags, (std::vector<double>{14, 8, 3}));
}

TEST(Autocorrelate, MatchesDirectSumExactlyOnIntegers) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-50, 50);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(1 + trial * 3);
    for (double &v : x) v = d(rng);
    const std::size_t max_lag = x.size() - 1;
    const auto r = Autocorrelate(x, max_lag);
    for (std::size_t j = 0; j <= max_lag; ++j) {
      long long acc = 0;
      for (std::size_t n = 0; n + j < x.size(); ++n) acc += static_cast<long long>(x[n]) * x[n + j];
      EXPECT_EQ(r[j], static_cast<double>(acc));
    }
  }
}

TEST(Autocorrelate, ZeroLagIsEnergyAndBounded) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  std::vector<double> x(200);
  for (double &v : x) v = g(rng);
  const auto r = Autocorrelate(x, 100);
  EXPECT_DOUBLE_EQ(r[0], Energy(x));
  for (std::size_t j = 1; j <= 100; ++j) EXPECT_LE(std::abs(r[j]), r[0]);
}

TEST(Autocorrelate, ZeroFrameAndLagErrors) {
  const std::vector<double> z(10, 0.0);
  for (double v : Autocorrelate(z, 9).lags) EXPECT_EQ(v, 0.0);
  try {
    Autocorrelate(z, 10);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kLagTooLarge);
  }
}

TEST(LevinsonDurbin, WhiteSpectrumPredictsNothing) {
  AutocorrelationSequence r;
  r.lags.assign(11, 0.0);
  r.lags[0] = 1.0;
  const auto m = LevinsonDurbin(r, 10);
  for (double a : m.coefficients) EXPECT_EQ(a, 0.0);
  EXPECT_EQ(m.gain_sq, 1.0);
}

TEST(LevinsonDurbin, RecoversAr1Sign) {
  const auto x = ArProcess({-0.9}, 10000, 11);
  const auto m = LevinsonDurbin(Autocorrelate(x, 1), 1);
  EXPECT_NEAR(m.coefficients[0], -0.9, 0.02);
}

TEST(LevinsonDurbin, SingularInputs) {
  AutocorrelationSequence zero;
  zero.lags.assign(5, 0.0);
  EXPECT_THROW(LevinsonDurbin(zero, 4), Error);
  // A pure constant frame gives |k1| = 1 on the lag-1 step.
  AutocorrelationSequence flat;
  flat.lags.assign(5, 1.0);
  try {
    LevinsonDurbin(flat, 4);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kSingularAutocorrelation);
  }
}

TEST(LevinsonDurbin, ReflectionBoundedGainMonotone) {
  const auto x = ArProcess(StableAr10(), 4000, 21);
  const auto r = Autocorrelate(x, 16);
  double prev = r[0];
  for (std::size_t p = 1; p <= 16; ++p) {
    const auto m = LevinsonDurbin(r, p);
    for (double k : m.reflection) EXPECT_LT(std::abs(k), 1.0);
    EXPECT_LE(m.gain_sq, prev);
    EXPECT_GT(m.gain_sq, 0.0);
    prev = m.gain_sq;
  }
}

TEST(LevinsonDurbin, SolvesNormalEquations) {
  const auto x = ArProcess(StableAr10(), 3000, 4);
  const auto r = Autocorrelate(x, 10);
  const auto m = LevinsonDurbin(r, 10);
  for (std::size_t i = 1; i <= 10; ++i) {
    double lhs = r[i];
    for (std::size_t j = 1; j <= 10; ++j) lhs += m.coefficients[j - 1] * r[i > j ? i - j : j - i];
    EXPECT_NEAR(lhs, 0.0, 1e-8 * r[0]);
  }
}

TEST(InverseFilter, IdentityAndImpulse) {
  LpcModel zero;
  zero.coefficients.assign(3, 0.0);
  const std::vector<double> x{0.3, -1.0, 2.0, 0.5};
  EXPECT_EQ(InverseFilter(x, zero), x);
  LpcModel m;
  m.coefficients = {-0.5};
  const auto e = InverseFilter(std::vector<double>{1, 0, 0, 0}, m);
  EXPECT_EQ(e, (std::vector<double>{1, -0.5, 0, 0}));
}

TEST(InverseFilter, WhitensOwnArProcess) {
  const auto truth = StableAr10();
  const auto x = ArProcess(truth, 4000, 99);
  const auto m = LevinsonDurbin(Autocorrelate(x, 10), 10);
  const double ratio = Energy(InverseFilter(x, m)) / Energy(x);
  EXPECT_LT(ratio, 0.1);
  // Close to what the true coefficients achieve.
  LpcModel ideal;
  ideal.coefficients = truth;
  EXPECT_LT(ratio, 1.05 * Energy(InverseFilter(x, ideal)) / Energy(x));
}

}  // namespace
}  // namespace vocalaffect
