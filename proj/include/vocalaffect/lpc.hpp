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

#ifndef VOCALAFFECT_LPC_HPP_
#define VOCALAFFECT_LPC_HPP_

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vocalaffect/error.hpp"

namespace vocalaffect {

/// R(j) = sum_n x(n) x(n-j), j = 0..max_lag. Biased (no 1/N).
struct AutocorrelationSequence {
  std::vector<double> lags;

  std::size_t max_lag() const noexcept { return lags.empty() ? 0 : lags.size() - 1; }
  double operator[](std::size_t j) const { return lags[j]; }
};

inline AutocorrelationSequence Autocorrelate(std::span<const double> x,
                                             std::size_t max_lag) {
  if (max_lag >= x.size())
    throw Error(ErrorCode::kLagTooLarge,
                "lag " + std::to_string(max_lag) + " for frame of " +
                    std::to_string(x.size()));
  AutocorrelationSequence r;
  r.lags.assign(max_lag + 1, 0.0);
  for (std::size_t j = 0; j <= max_lag; ++j) {
    double acc = 0.0;
    for (std::size_t n = j; n < x.size(); ++n) acc += x[n] * x[n - j];
    r.lags[j] = acc;
  }
  return r;
}

/// All-pole model with A(z) = 1 + sum_{i=1..order} a(i) z^-i, so that
/// s(n) = -sum a(i) s(n-i) + e(n). The leading a(0) = 1 is implicit.
struct LpcModel {
  std::vector<double> coefficients;  // a(1..order)
  std::vector<double> reflection;    // k(1..order) from the recursion
  double gain_sq = 0.0;              // final prediction-error energy

  std::size_t order() const noexcept { return coefficients.size(); }
};

// Levinson-Durbin on the Toeplitz normal equations. Throws
// SingularAutocorrelation when R(0) <= 0 or the error energy stops being
// positive before the requested order is reached.
inline LpcModel LevinsonDurbin(const AutocorrelationSequence &r,
                               std::size_t order) {
  if (order == 0 || order > r.max_lag() || r.lags.empty())
    throw Error(ErrorCode::kInvalidArgument,
                "order " + std::to_string(order) + " needs max_lag >= order");
  const double r0 = r[0];
  if (!(r0 > 0.0))
    throw Error(ErrorCode::kSingularAutocorrelation, "R(0) is not positive");

  std::vector<double> a(order + 1, 0.0), prev(order + 1, 0.0);
  a[0] = 1.0;
  LpcModel model;
  model.reflection.reserve(order);
  double err = r0;
  for (std::size_t i = 1; i <= order; ++i) {
    double acc = r[i];
    for (std::size_t j = 1; j < i; ++j) acc += a[j] * r[i - j];
    const double k = -acc / err;
    if (!(std::abs(k) < 1.0))
      throw Error(ErrorCode::kSingularAutocorrelation,
                  "reflection coefficient |k| >= 1 at order " + std::to_string(i));
    prev = a;
    for (std::size_t j = 1; j < i; ++j) a[j] = prev[j] + k * prev[i - j];
    a[i] = k;
    err *= (1.0 - k * k);
    model.reflection.push_back(k);
    if (!(err > 0.0))
      throw Error(ErrorCode::kSingularAutocorrelation,
                  "prediction error vanished at order " + std::to_string(i));
  }
  model.coefficients.assign(a.begin() + 1, a.end());
  model.gain_sq = err;
  return model;
}

/// e(n) = s(n) + sum_i a(i) s(n-i); samples before the frame are zero.
inline std::vector<double> InverseFilter(std::span<const double> frame,
                                         const LpcModel &model) {
  std::vector<double> e(frame.size());
  const auto &a = model.coefficients;
  for (std::size_t n = 0; n < frame.size(); ++n) {
    double acc = frame[n];
    for (std::size_t i = 1; i <= a.size() && i <= n; ++i)
      acc += a[i - 1] * frame[n - i];
    e[n] = acc;
  }
  return e;
}

}  // namespace vocalaffect

#endif  // VOCALAFFECT_LPC_HPP_
