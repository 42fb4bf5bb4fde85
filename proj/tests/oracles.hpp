// Copyright 2026 The capcover Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Test-only reference computations. Nothing here calls into the library's
// quadrature or special-function code paths.

#include <array>
#include <cmath>
#include <numbers>

namespace oracle {

// Composite 5-point Gauss-Legendre rule on `panels` equal panels.
template <typename F>
double gauss_legendre(F&& f, double a, double b, int panels) {
  static constexpr std::array<double, 5> x = {0.0, 0.5384693101056831, -0.5384693101056831,
                                              0.9061798459386640, -0.9061798459386640};
  static constexpr std::array<double, 5> w = {0.5688888888888889, 0.4786286704993665,
                                              0.4786286704993665, 0.2369268850561891,
                                              0.2369268850561891};
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double c = a + (p + 0.5) * h;
    double s = 0.0;
    for (int k = 0; k < 5; ++k) s += w[k] * f(c + 0.5 * h * x[k]);
    sum += 0.5 * h * s;
  }
  return sum;
}

// E_1(x) by its convergent power series (fine for moderate x).
inline double exponential_integral_e1(double x) {
  constexpr double kEulerGamma = 0.57721566490153286060651209;
  double term = 1.0;
  double sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    term *= -x / k;
    sum += term / k;
    if (std::abs(term) < 1e-20) break;
  }
  return -kEulerGamma - std::log(x) - sum;
}

inline constexpr double kEulerGamma = 0.57721566490153286060651209;

}  // namespace oracle
