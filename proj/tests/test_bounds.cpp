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
#include <vector>

#include "capcover/bounds.hpp"
#include "oracles.hpp"

namespace capcover {
namespace {

TEST(Beta, Values) {
  EXPECT_NEAR(beta_lower(1e6, 1.0), 1.83939797227e-7, 1e-17);
  // leading term e^{-alpha} alpha^2 / (2N)
  EXPECT_NEAR(beta_lower(1e9, 1.0) / (std::exp(-1.0) / 2e9), 1.0, 1e-6);
  EXPECT_DOUBLE_EQ(beta_lower(1.0, 1.0), std::exp(-1.0));
  EXPECT_THROW(beta_lower(0.5, 1.0), DomainError);
  EXPECT_THROW(beta_lower(10, 1.5), DomainError);
}

TEST(Beta, PositiveAndDecreasing) {
  for (double alpha : {0.1, 0.7, 1.0}) {
    double prev = 1.0;
    for (double n = 2; n <= 1e9; n *= 3.7) {
      const double b = beta_lower(n, alpha);
      EXPECT_GT(b, 0.0);
      EXPECT_LT(b, prev);
      prev = b;
    }
  }
}

TEST(AlphaCorrection, VanishesWithN) {
  const Dim d(6);
  double prev = alpha_correction(d, 10, 1.0);
  for (double n = 100; n <= 1e12; n *= 10) {
    const double a = alpha_correction(d, n, 1.0);
    EXPECT_LT(a, prev);
    EXPECT_GE(a, zone_allowance(d, n, 1.0));
    prev = a;
  }
  EXPECT_LT(prev, 0.05);
  // remainder equals e^{-alpha} once 2 alpha/N >= 1
  EXPECT_NEAR(alpha_correction(d, 2, 1.0), zone_allowance(d, 2, 1.0) + std::exp(-1.0), 1e-15);
}

TEST(ConeTerm, Values) {
  EXPECT_NEAR(cone_term(Dim(100), 1.0), 0.357770876399966, 1e-14);
  EXPECT_NEAR(cone_term(Dim(5), 0.25), 16 * std::sqrt(5.0) / 5 * 0.5, 1e-14);
  EXPECT_THROW(cone_term(Dim(3), 1.0), DomainError);
}

TEST(Threshold, Values) {
  EXPECT_NEAR(threshold_n(Dim(5)), 126.5625, 1e-12);
  EXPECT_NEAR(threshold_n(Dim(6)), 1788.85438199983, 1e-9);
  EXPECT_EQ(threshold_n(Dim(4)), 1.0);
  for (int d = 6; d < 60; ++d) EXPECT_GT(threshold_n(Dim(d + 1)), threshold_n(Dim(d)));
}

TEST(ZoneBound, Values) {
  const auto z = zone_bound(Dim(5), 127);
  EXPECT_NEAR(z.simplified, 0.531464344539395, 1e-13);
  EXPECT_NEAR(zone_bound(Dim(5), 1e6).simplified, 0.0564189583547756, 1e-14);
  EXPECT_THROW(zone_bound(Dim(4), 100), DomainError);
  EXPECT_THROW(zone_bound(Dim(5), 1), DomainError);
}

TEST(ZoneBound, FullBelowSimplifiedAboveThreshold) {
  for (int d : {5, 6, 8, 12, 20, 50, 100}) {
    const double start = std::max(2.0, threshold_n(Dim(d)));
    for (double n = start; n < start * 1e9 && n < 1e300; n *= 10) {
      const auto z = zone_bound(Dim(d), n);
      EXPECT_LE(z.full, z.simplified) << d << " " << n;
      EXPECT_GT(z.full, 0.0);
    }
  }
}

TEST(ZoneCoefficient, MatchesGammaRatio) {
  for (int d : {3, 5, 10, 100}) {
    const double expect = 2.0 * std::exp(std::lgamma(d / 2.0) - std::lgamma((d - 1) / 2.0)) /
                          std::sqrt(std::numbers::pi);
    EXPECT_NEAR(zone_coefficient(Dim(d)), expect, 1e-12 * expect);
  }
}

TEST(Sidak, ProductBound) {
  const double eps = 1e-3;
  const std::vector<double> one = {0.5 - eps};
  EXPECT_NEAR(sidak_product_bound(one), 2 * eps, 1e-15);
  EXPECT_EQ(sidak_product_bound(std::vector<double>{}), 1.0);
  const std::vector<double> many(1000000, 1e-6);
  EXPECT_NEAR(sidak_product_bound(many), std::exp(1e6 * std::log1p(-2e-6)), 1e-10);
  const std::vector<double> bad = {0.5};
  EXPECT_THROW(sidak_product_bound(bad), DomainError);
}

TEST(TheoremBounds, Ordering) {
  for (int d : {5, 10, 100}) {
    for (double n : {1e3, 1e6, 1e9}) {
      const auto r = theorem_bounds({d, n, 1.0});
      EXPECT_LE(r.lower, r.upper);
      EXPECT_NEAR(r.base, 1 - std::exp(-1.0), 1e-15);
      EXPECT_EQ(r.precondition_met, n >= threshold_n(Dim(d)));
      EXPECT_NEAR(r.lower, expected_random_coverage(static_cast<std::int64_t>(n), 1.0), 1e-14);
    }
  }
  EXPECT_THROW(theorem_bounds({4, 1e6, 1.0}), DomainError);
  EXPECT_THROW(theorem_bounds({5, 1, 1.0}), DomainError);
}

TEST(Euler, Brackets) {
  const std::vector<int> dims = {5, 100, 1000000};
  const auto rows = euler_report(dims);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_TRUE(std::isinf(rows[0].e_upper));
  EXPECT_NEAR(rows[2].e_lower, std::numbers::e, 1e-15);
  EXPECT_NEAR(rows[2].e_upper, 2.718546213, 1e-8);
  EXPECT_GT(rows[1].e_upper, rows[2].e_upper);
  EXPECT_NEAR(rows[1].coverage_upper - rows[1].coverage_lower, 0.357770876399966, 1e-14);
}

TEST(Ldiv, TwoSchemesAgree) {
  const auto gk = ldiv_upper_constant();
  const auto simpson = ldiv_upper_constant_simpson();
  EXPECT_NEAR(gk.value, simpson.value, 1e-8);
  EXPECT_NEAR(gk.value, 0.11336, 5e-6);
  EXPECT_LT(gk.remainder_bound, 1e-18);
}

TEST(Ldiv, ExponentialIntegralIdentity) {
  // int_0^1 (1 - 2^-t)/t dt + int_0^inf 2^{-e^t} dt = gamma + ln ln2 + 2 E1(ln2)
  const double ln2 = std::numbers::ln2;
  const double closed = oracle::kEulerGamma + std::log(ln2) + 2 * oracle::exponential_integral_e1(ln2);
  const auto c = ldiv_upper_constant();
  EXPECT_NEAR(closed, 0.968044830442044487, 1e-14);
  EXPECT_NEAR(c.bracket, closed, 1e-8);
  EXPECT_NEAR(c.value, 0.11335772346073962604, 1e-8);
}

TEST(Efr, Reference) { EXPECT_DOUBLE_EQ(efr_reference(), 0.92334); }

}  // namespace
}  // namespace capcover
