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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "capcover/quadrature.hpp"

namespace capcover {
namespace {

TEST(Quadrature, PolynomialExact) {
  const auto r = integrate_gk([](double x) { return x * x * x - 2 * x; }, 0.0, 2.0, 1e-14, 1e-14);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 0.0, 1e-14);
}

TEST(Quadrature, SmoothTranscendental) {
  const auto gk = integrate_gk([](double x) { return std::exp(-x * x); }, 0.0, 3.0, 1e-15, 1e-15);
  const auto si = integrate_simpson([](double x) { return std::exp(-x * x); }, 0.0, 3.0, 1e-13);
  const double exact = 0.5 * std::sqrt(std::numbers::pi) * std::erf(3.0);
  EXPECT_NEAR(gk.value, exact, 1e-14);
  EXPECT_NEAR(si.value, exact, 1e-12);
}

TEST(Quadrature, EndpointSingularDerivative) {
  // int_0^1 sqrt(x) dx = 2/3
  const auto r = integrate_gk([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-13, 1e-13);
  EXPECT_NEAR(r.value, 2.0 / 3.0, 1e-12);
}

TEST(Quadrature, EmptyInterval) {
  EXPECT_EQ(integrate_gk([](double) { return 1.0; }, 1.0, 1.0, 1e-12, 1e-12).value, 0.0);
}

}  // namespace
}  // namespace capcover
