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
#include <vector>

#include "capcover/gaussian_verify.hpp"
#include "capcover/sampling.hpp"

namespace capcover {
namespace {

TEST(RngSpec, StreamsDifferAndAreStable) {
  const RngSpec a{42};
  EXPECT_EQ(a.stream_seed(3), RngSpec{42}.stream_seed(3));
  EXPECT_NE(a.stream_seed(3), a.stream_seed(4));
  EXPECT_NE(a.substream(1).master_seed, a.substream(2).master_seed);
  EXPECT_EQ(a.chunk_count(1), 1u);
  EXPECT_EQ(a.chunk_count(a.chunk_size + 1), 2u);
}

TEST(SampleSphere, UnitNorm) {
  const auto pts = sample_uniform_sphere(Dim(17), RngSpec{1, 1000}, 5000);
  for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_NEAR(norm(pts[i]), 1.0, 1e-12);
}

TEST(SampleSphere, Moments) {
  const int d = 6;
  const std::size_t n = 200000;
  const auto pts = sample_uniform_sphere(Dim(d), RngSpec{7}, n);
  std::vector<double> mean(d, 0.0);
  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) mean[j] += pts[i][j];
    sq += pts[i][0] * pts[i][0];
  }
  for (int j = 0; j < d; ++j) EXPECT_LE(std::abs(mean[j] / n), 4.0 / std::sqrt(n));
  // E[x1^2] = 1/d; Var[x1^2] = 2(d-1)/(d^2(d+2)) <= 2/d^2
  EXPECT_LE(std::abs(sq / n - 1.0 / d), 4.0 * std::sqrt(2.0 / d) / std::sqrt(n));
}

TEST(SampleSphere, DeterministicAndWorkerInvariant) {
  const RngSpec rng{99, 512};
  set_worker_count(1);
  const auto a = sample_uniform_sphere(Dim(4), rng, 3000);
  set_worker_count(3);
  const auto b = sample_uniform_sphere(Dim(4), rng, 3000);
  set_worker_count(0);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.flat().size(); ++i) ASSERT_EQ(a.flat()[i], b.flat()[i]);
  const auto c = sample_uniform_sphere(Dim(4), RngSpec{100, 512}, 3000);
  EXPECT_NE(a.flat()[0], c.flat()[0]);
}

TEST(RandomConfiguration, EqualMassesAndBoundary) {
  const auto cfg = random_configuration(Dim(5), 40, 0.8, RngSpec{3});
  ASSERT_EQ(cfg.size(), 40u);
  for (const auto& cap : cfg.caps()) EXPECT_DOUBLE_EQ(cap.mass(), 0.02);
  EXPECT_NEAR(cfg.total_mass(), 0.8, 1e-12);
  EXPECT_FALSE(cfg.antipodal());
  const auto whole = random_configuration(Dim(3), 1, 1.0, RngSpec{3});
  EXPECT_TRUE(whole.caps()[0].is_full());
  EXPECT_THROW(random_configuration(Dim(3), 0, 0.5, RngSpec{}), DomainError);
  EXPECT_THROW(random_configuration(Dim(3), 4, 1.5, RngSpec{}), DomainError);
}

TEST(RandomConfiguration, SeedsGiveDistinctCenters) {
  const auto a = random_configuration(Dim(3), 5, 0.5, RngSpec{1});
  const auto b = random_configuration(Dim(3), 5, 0.5, RngSpec{2});
  EXPECT_NE(a.caps()[0].center()[0], b.caps()[0].center()[0]);
}

TEST(AntipodalConfiguration, PairsAreMirrored) {
  const Dim d(6);
  const std::vector<std::vector<double>> centers = {{1, 0, 0, 0, 0, 0}, {0, 0, 0.6, 0.8, 0, 0}};
  const std::vector<double> masses = {0.01, 0.02};
  const auto cfg = antipodal_configuration(d, centers, masses, 0.06);
  ASSERT_EQ(cfg.size(), 4u);
  EXPECT_TRUE(cfg.antipodal());
  EXPECT_DOUBLE_EQ(cfg.caps()[1].center()[0], -1.0);
  EXPECT_DOUBLE_EQ(cfg.caps()[3].center()[3], -0.8);
  EXPECT_DOUBLE_EQ(cfg.caps()[2].mass(), cfg.caps()[3].mass());
  // pair masses sum to alpha / 2
  EXPECT_NEAR(masses[0] + masses[1], 0.06 / 2, 1e-15);
}

TEST(AntipodalConfiguration, ClosedUnderNegation) {
  const Dim d(4);
  const auto pts = sample_uniform_sphere(d, RngSpec{5}, 3);
  std::vector<std::vector<double>> centers;
  for (std::size_t i = 0; i < 3; ++i) centers.emplace_back(pts[i].begin(), pts[i].end());
  const std::vector<double> masses = {0.01, 0.01, 0.01};
  const auto cfg = antipodal_configuration(d, centers, masses);
  for (const auto& cap : cfg.caps()) {
    bool found = false;
    for (const auto& other : cfg.caps()) {
      bool opposite = true;
      for (int j = 0; j < d; ++j) opposite &= std::abs(cap.center()[j] + other.center()[j]) < 1e-15;
      found |= opposite && other.mass() == cap.mass();
    }
    EXPECT_TRUE(found);
  }
  // a rigid pair move keeps the pairing
  const auto moved = cfg.with_center(3, {0.0, 0.0, 0.0, 1.0});
  EXPECT_DOUBLE_EQ(moved.caps()[2].center()[3], -1.0);
}

TEST(AntipodalConfiguration, RejectsLargeMass) {
  const Dim d(6);
  const double limit = mass_upper_limit(d);
  const std::vector<std::vector<double>> centers = {{1, 0, 0, 0, 0, 0}};
  const std::vector<double> masses = {limit};
  EXPECT_THROW(antipodal_configuration(d, centers, masses), DomainError);
}

TEST(Configuration, RejectsMismatchedDimensions) {
  std::vector<Cap> caps = {Cap::from_mass({1.0, 0.0}, 0.1), Cap::from_mass({1.0, 0.0, 0.0}, 0.1)};
  EXPECT_THROW(Configuration(Dim(2), caps, false), DomainError);
}

TEST(Zone, Membership) {
  const auto z = make_zone(Dim(5), 16);
  EXPECT_NEAR(z.half_height(), 0.5, 1e-15);
  EXPECT_TRUE(in_zone(std::vector<double>{1, 0, 0, 0, 0}, z));
  EXPECT_FALSE(in_zone(std::vector<double>{0, 0, 0, 0, 1}, z));
  for (int d : {3, 8}) {
    std::vector<double> pole(d, 0.0);
    pole.back() = 1.0;
    for (int n : {2, 100}) EXPECT_FALSE(in_zone(pole, make_zone(Dim(d), n)));
  }
}

TEST(Zone, MonteCarloFractionMatchesExactMeasure) {
  for (auto [d, n] : {std::pair{3, 4}, std::pair{5, 1000}, std::pair{10, 1000000}}) {
    const auto z = make_zone(Dim(d), n);
    const std::size_t samples = 100000;
    const auto pts = sample_uniform_sphere(Dim(d), RngSpec{11}, samples);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < samples; ++i) hits += in_zone(pts[i], z) ? 1 : 0;
    const double p = static_cast<double>(hits) / samples;
    const double exact = zone_measure_exact(Dim(d), n);
    EXPECT_LE(std::abs(p - exact), 4.0 * std::sqrt(exact * (1 - exact) / samples)) << d << " " << n;
    // zone_quadrature agrees with the exact band to leading order
    EXPECT_NEAR(zone_quadrature(Dim(d), n), exact, 0.02) << d << " " << n;
  }
}

}  // namespace
}  // namespace capcover
