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

#ifndef VOCALAFFECT_ROOTS_HPP_
#define VOCALAFFECT_ROOTS_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vocalaffect/error.hpp"

namespace vocalaffect {

struct RootFinderOptions {
  int max_iterations = 200;
  double residual_tolerance = 1e-8;
};

namespace roots_detail {

// Horner evaluation of p and p' for p(z) = sum_i c[i] z^(d-i), c[0] = 1.
inline void EvaluateWithDerivative(std::span<const double> c,
                                   std::complex<double> z,
                                   std::complex<double> &p,
                                   std::complex<double> &dp) {
  p = c[0];
  dp = 0.0;
  for (std::size_t i = 1; i < c.size(); ++i) {
    dp = dp * z + p;
    p = p * z + c[i];
  }
}

}  // namespace roots_detail

/// Roots of the monic polynomial z^d + c[1] z^(d-1) + ... + c[d], where
/// `coeffs` = {1, c[1], ..., c[d]} and c[d] != 0.
///
/// Aberth-Ehrlich simultaneous iteration (Jacobi sweep) from points on a
/// circle, followed by two Newton polishing steps per root. Each root must
/// satisfy |p(z)| <= tol * sum_i |c[i]| |z|^(d-i) after the iteration cap,
/// otherwise RootFindingDivergence is thrown.
inline std::vector<std::complex<double>> MonicPolynomialRoots(
    std::span<const double> coeffs, const RootFinderOptions &opts = {}) {
  using cd = std::complex<double>;
  if (coeffs.empty() || coeffs[0] != 1.0)
    throw Error(ErrorCode::kInvalidArgument, "polynomial must be monic");
  const std::size_t d = coeffs.size() - 1;
  if (d == 0) return {};
  if (d == 1) return {cd(-coeffs[1], 0.0)};

  // Start on a circle whose radius is the geometric mean of root magnitudes,
  // rotated off the real axis so even polynomials do not stall.
  const double radius =
      std::max(1e-3, std::pow(std::abs(coeffs[d]), 1.0 / static_cast<double>(d)));
  std::vector<cd> z(d), step(d);
  for (std::size_t k = 0; k < d; ++k)
    z[k] = std::polar(radius, 2.0 * std::numbers::pi * k / static_cast<double>(d) + 0.4);

  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    double largest = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      cd p, dp;
      roots_detail::EvaluateWithDerivative(coeffs, z[k], p, dp);
      if (p == 0.0) {
        step[k] = 0.0;
        continue;
      }
      const cd ratio = p / dp;
      cd repulsion = 0.0;
      for (std::size_t j = 0; j < d; ++j)
        if (j != k) repulsion += 1.0 / (z[k] - z[j]);
      step[k] = ratio / (1.0 - ratio * repulsion);
      if (!std::isfinite(step[k].real()) || !std::isfinite(step[k].imag()))
        step[k] = ratio;
      largest = std::max(largest, std::abs(step[k]) / std::max(1.0, std::abs(z[k])));
    }
    for (std::size_t k = 0; k < d; ++k) z[k] -= step[k];
    if (largest < 1e-15) break;
  }

  for (auto &root : z) {
    for (int polish = 0; polish < 2; ++polish) {
      cd p, dp;
      roots_detail::EvaluateWithDerivative(coeffs, root, p, dp);
      if (std::abs(dp) > 0.0) {
        const cd next = root - p / dp;
        cd pn, dpn;
        roots_detail::EvaluateWithDerivative(coeffs, next, pn, dpn);
        if (std::abs(pn) < std::abs(p)) root = next;
      }
    }
  }

  for (const auto &root : z) {
    cd p, dp;
    roots_detail::EvaluateWithDerivative(coeffs, root, p, dp);
    double scale = 0.0;
    const double mag = std::abs(root);
    for (std::size_t i = 0; i <= d; ++i)
      scale += std::abs(coeffs[i]) * std::pow(mag, static_cast<double>(d - i));
    if (!(std::abs(p) <= opts.residual_tolerance * scale))
      throw Error(ErrorCode::kRootFindingDivergence,
                  "residual " + std::to_string(std::abs(p)) + " after " +
                      std::to_string(opts.max_iterations) + " iterations");
  }
  return z;
}

}  // namespace vocalaffect

#endif  // VOCALAFFECT_ROOTS_HPP_
