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
#include <string>
#include <vector>

#include "capcover/bounds.hpp"
#include "capcover/gaussian_verify.hpp"

namespace capcover {
namespace {

std::vector<double> e1(int d) {
  std::vector<double> v(d, 0.0);
  v[0] = 1.0;
  return v;
}

TEST(ConeIdentity, MatchesMass) {
  for (int d : {3, 10, 50}) {
    for (double m : {0.001, 0.2, 0.5}) {
      const auto rep = cone_measure_identity_mc(Cap::from_mass(e1(d), m), RngSpec{31}, 100000);
      EXPECT_TRUE(rep.passed) << rep.detail;
      EXPECT_EQ(rep.kind, CheckKind::kIdentity);
    }
  }
  EXPECT_THROW(cone_measure_identity_mc(Cap::from_mass(e1(3), 0.1), RngSpec{}, 100), DomainError);
}

TEST(TruncatedCone, BelowPerConeConstant) {
  for (int d : {5, 10, 20, 50, 100}) {
    const double limit = mass_upper_limit(Dim(d));
    for (double f : {1e-9, 1e-6, 1e-3, 0.5 * limit}) {
      if (f >= limit) continue;
      const auto g = make_cone_geometry(Dim(d), f);
      const double measure = truncated_cone_measure(g);
      EXPECT_GT(measure, 0.0);
      EXPECT_LE(measure, truncated_cone_bound(Dim(d), f)) << d << " " << f;
    }
  }
}

TEST(TruncatedCone, LargeDimensionNearLimit) {
  // 40-digit reference; above the 8 sqrt5 / d constant, below twice it
  const Dim d(1000);
  const double f = mass_upper_limit(d) / 2;
  const double m = truncated_cone_measure(make_cone_geometry(d, f));
  EXPECT_NEAR(m / 3.04627832619089368180951859343550778575e-27, 1.0, 1e-8);
  EXPECT_GT(m, truncated_cone_bound(d, f));
  EXPECT_LT(m, 2 * truncated_cone_bound(d, f));
  EXPECT_NEAR(truncated_cone_measure(make_cone_geometry(Dim(100), mass_upper_limit(Dim(100)) / 2)),
              8.456498815621583264849126857442448806431e-6, 1e-14);
}

TEST(TruncatedCone, IncreasesWithMass) {
  const Dim d(8);
  double prev = 0.0;
  for (double f = 1e-8; f < 0.5 * mass_upper_limit(d); f *= 4) {
    const double v = truncated_cone_measure(make_cone_geometry(d, f));
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(TruncatedCone, BoundValue) {
  EXPECT_NEAR(truncated_cone_bound(Dim(5), 0.25), 8 * std::sqrt(5.0) / 5 * 0.5, 1e-14);
}

TEST(Sidak, IntersectionDominatesProduct) {
  const int d = 4;
  std::vector<Slab> slabs;
  slabs.push_back({e1(d), 1.0});
  slabs.push_back({{0.6, 0.8, 0.0, 0.0}, 0.5});
  slabs.push_back({{0.0, 0.0, 0.0, 1.0}, 2.0});
  const auto rep = sidak_mc(slabs, RngSpec{5}, 200000);
  EXPECT_TRUE(rep.passed) << rep.detail;
  // identical slabs: intersection is the single slab, strictly above the product
  const std::vector<Slab> same = {{e1(d), 0.8}, {e1(d), 0.8}};
  const auto dup = sidak_mc(same, RngSpec{6}, 200000);
  EXPECT_TRUE(dup.passed);
  EXPECT_NEAR(dup.rhs, same[0].gaussian_measure(), 0.01);
  EXPECT_NEAR(dup.lhs, same[0].gaussian_measure() * same[0].gaussian_measure(), 1e-15);
}

TEST(Sidak, RejectsBadInput) {
  EXPECT_THROW(sidak_mc({}, RngSpec{}, 200000), DomainError);
  const std::vector<Slab> s = {{{2.0, 0.0}, 1.0}};
  EXPECT_THROW(sidak_mc(s, RngSpec{}, 200000), DomainError);
  const std::vector<Slab> ok = {{{1.0, 0.0}, 1.0}};
  EXPECT_THROW(sidak_mc(ok, RngSpec{}, 1000), DomainError);
}

TEST(ZoneQuadrature, BetweenQuadratureChain) {
  for (int d : {5, 10, 50}) {
    for (double n : {1e3, 1e6, 1e9}) {
      if (n < threshold_n(Dim(d))) continue;
      const double q = zone_quadrature(Dim(d), n);
      const auto z = zone_bound(Dim(d), n);
      EXPECT_LE(q, z.full) << d << " " << n;
      EXPECT_LE(z.full, z.simplified) << d << " " << n;
    }
  }
  EXPECT_NEAR(zone_quadrature(Dim(5), 1e6), 0.04741834876900066, 1e-12);
}

TEST(ZoneQuadrature, ThreeSphereClosedForm) {
  // d = 3: coefficient 1, integrand (1 - x^2)^{1/2}
  const double s = std::pow(100.0, -0.5);
  const double u = std::asin(s);
  const double expect = 0.5 * (u * std::sqrt(1 - u * u) + std::asin(u));
  EXPECT_NEAR(zone_quadrature(Dim(3), 100), expect, 1e-14);
  EXPECT_NEAR(zone_measure_exact(Dim(3), 100), s, 1e-14);
}

TEST(ScalarInequalities, OnlyBinomialFailsAtThreeHalves) {
  const auto reps = scalar_inequalities(20000);
  ASSERT_EQ(reps.size(), 6u);
  for (const auto& r : reps) {
    if (r.name == "binomial_quadratic") {
      EXPECT_FALSE(r.passed);
      EXPECT_NE(r.detail.find("failing k: 1.5"), std::string::npos) << r.detail;
      EXPECT_EQ(r.detail.find("failing k: 1.5 "), std::string::npos) << r.detail;
    } else {
      EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
    }
  }
}

TEST(Report, Semantics) {
  EXPECT_TRUE(make_report("a", CheckKind::kIdentity, 1.0, 1.05, 0.1).passed);
  EXPECT_FALSE(make_report("a", CheckKind::kIdentity, 1.0, 1.2, 0.1).passed);
  EXPECT_TRUE(make_report("a", CheckKind::kInequality, 0.0, 5.0, 0.0).passed);
  EXPECT_FALSE(make_report("a", CheckKind::kInequality, 5.0, 0.0, 0.1).passed);
}

}  // namespace
}  // namespace capcover
