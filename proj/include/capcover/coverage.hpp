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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <utility>
#include <vector>

#include "capcover/cap_geometry.hpp"
#include "capcover/error.hpp"
#include "capcover/sampling.hpp"
#include "capcover/special_functions.hpp"

namespace capcover {

/// Monte Carlo estimate of sigma(union of caps).
struct CoverageEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;  // per configuration
  RngSpec rng{};
  std::uint64_t n_configs = 1;
};

namespace detail {

// Flattened cap centers and thresholds for the max-dot-product scan.
class UnionTester {
 public:
  explicit UnionTester(const Configuration& config) : d_(config.dim()) {
    centers_.reserve(config.size() * d_);
    for (const auto& cap : config.caps()) {
      if (cap.is_full()) has_full_ = true;
      centers_.insert(centers_.end(), cap.center().begin(), cap.center().end());
      thresholds_.push_back(cap.cos_threshold());
    }
  }

  [[nodiscard]] bool covers(const double* p) const {
    if (has_full_) return true;
    const double* c = centers_.data();
    for (std::size_t k = 0; k < thresholds_.size(); ++k, c += d_) {
      double s = 0.0;
      for (int j = 0; j < d_; ++j) s += p[j] * c[j];
      if (s >= thresholds_[k]) return true;
    }
    return false;
  }

 private:
  int d_;
  bool has_full_ = false;
  std::vector<double> centers_;
  std::vector<double> thresholds_;
};

inline double binomial_se(double p, std::uint64_t n) {
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

}  // namespace detail

/// Fraction of n_samples uniform points that land in at least one cap.
inline CoverageEstimate mc_coverage(const Configuration& config, const RngSpec& rng,
                                    std::uint64_t n_samples) {
  detail::require(!config.empty(), "mc_coverage: empty configuration");
  detail::require(n_samples >= 100, "mc_coverage: need at least 100 samples");
  const detail::UnionTester tester(config);
  const int d = config.dim();
  std::vector<std::uint64_t> hits(rng.chunk_count(n_samples), 0);
  detail::for_each_sample_chunk(d, rng, n_samples, true,
                                [&](std::size_t chunk, std::size_t, std::size_t n,
                                    std::span<const double> pts) {
                                  std::uint64_t h = 0;
                                  for (std::size_t i = 0; i < n; ++i)
                                    h += tester.covers(pts.data() + i * d) ? 1 : 0;
                                  hits[chunk] = h;
                                });
  const std::uint64_t total = std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
  const double p = static_cast<double>(total) / static_cast<double>(n_samples);
  return {p, detail::binomial_se(p, n_samples), n_samples, rng, 1};
}

/// Exact normalized length of a union of arcs on S^1. A cap of mass m is
/// the arc of half-angle pi m around its center.
inline double exact_coverage_circle(const Configuration& config) {
  detail::require(config.dim() == 2, "exact_coverage_circle: configuration must have d = 2");
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  std::vector<std::pair<double, double>> arcs;
  arcs.reserve(2 * config.size());
  for (const auto& cap : config.caps()) {
    if (cap.mass() >= 1.0) return 1.0;
    const double phi = std::atan2(cap.center()[1], cap.center()[0]);
    const double half = std::numbers::pi * cap.mass();
    double lo = std::fmod(phi - half, kTwoPi);
    if (lo < 0.0) lo += kTwoPi;
    const double hi = lo + 2.0 * half;
    if (hi <= kTwoPi) {
      arcs.emplace_back(lo, hi);
    } else {
      arcs.emplace_back(lo, kTwoPi);
      arcs.emplace_back(0.0, hi - kTwoPi);
    }
  }
  std::sort(arcs.begin(), arcs.end());
  double covered = 0.0;
  double cur_lo = 0.0;
  double cur_hi = -1.0;
  for (const auto& [lo, hi] : arcs) {
    if (lo > cur_hi) {
      if (cur_hi > cur_lo) covered += cur_hi - cur_lo;
      cur_lo = lo;
      cur_hi = hi;
    } else {
      cur_hi = std::max(cur_hi, hi);
    }
  }
  if (cur_hi > cur_lo) covered += cur_hi - cur_lo;
  return std::min(1.0, covered / kTwoPi);
}

/// E[sigma(union)] for N i.i.d. uniform caps of mass alpha/N:
/// 1 - (1 - alpha/N)^N, independent of the dimension.
inline double expected_random_coverage(std::int64_t n_caps, double alpha) {
  detail::require(n_caps >= 1, "expected_random_coverage: N must be >= 1");
  detail::require(alpha > 0.0 && alpha <= n_caps, "expected_random_coverage: need 0 < alpha/N <= 1");
  const double x = alpha / static_cast<double>(n_caps);
  if (x == 1.0) return 1.0;
  return -std::expm1(static_cast<double>(n_caps) * std::log1p(-x));
}

namespace detail {

inline CoverageEstimate summarize_configs(const std::vector<double>& means, const RngSpec& rng,
                                          std::uint64_t n_samples, double single_se) {
  const auto n = static_cast<double>(means.size());
  const double mean = std::accumulate(means.begin(), means.end(), 0.0) / n;
  double se = single_se;
  if (means.size() > 1) {
    double ss = 0.0;
    for (double m : means) ss += (m - mean) * (m - mean);
    se = std::sqrt(ss / (n - 1.0) / n);
  }
  return {mean, se, n_samples, rng, static_cast<std::uint64_t>(means.size())};
}

}  // namespace detail

/// Averages mc_coverage over n_configs independent random configurations.
/// Config k uses rng.substream(kConfigBase + k) for both its centers and
/// its sample points. The standard error is the between-config spread,
/// which already contains the per-config Monte Carlo noise.
inline CoverageEstimate mean_coverage_over_configs(Dim d, int n_caps, double alpha,
                                                   const RngSpec& rng, int n_configs,
                                                   std::uint64_t n_samples_per_config) {
  detail::require(n_configs >= 1, "mean_coverage_over_configs: need at least one configuration");
  std::vector<double> means;
  means.reserve(n_configs);
  double single_se = 0.0;
  for (int k = 0; k < n_configs; ++k) {
    const RngSpec stream = rng.substream(streams::kConfigBase + k);
    const Configuration config = random_configuration(d, n_caps, alpha, stream);
    const auto est = mc_coverage(config, stream, n_samples_per_config);
    means.push_back(est.mean);
    single_se = est.std_error;
  }
  return detail::summarize_configs(means, rng, n_samples_per_config, single_se);
}

/// d = 2 counterpart of mean_coverage_over_configs that uses the exact arc
/// union instead of Monte Carlo (n_samples is reported as 0).
inline CoverageEstimate mean_exact_circle_coverage(int n_caps, double alpha, const RngSpec& rng,
                                                   int n_configs) {
  detail::require(n_configs >= 1, "mean_exact_circle_coverage: need at least one configuration");
  std::vector<double> values;
  values.reserve(n_configs);
  for (int k = 0; k < n_configs; ++k) {
    const RngSpec stream = rng.substream(streams::kConfigBase + k);
    values.push_back(exact_coverage_circle(random_configuration(Dim(2), n_caps, alpha, stream)));
  }
  return detail::summarize_configs(values, rng, 0, 0.0);
}

}  // namespace capcover
