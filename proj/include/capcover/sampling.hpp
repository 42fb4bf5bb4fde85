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

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "capcover/cap_geometry.hpp"
#include "capcover/error.hpp"
#include "capcover/parallel.hpp"

namespace capcover {

/// SplitMix64 finalizer: a bijective avalanche mixer on 64-bit words.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Reproducible randomness: sample k belongs to chunk k / chunk_size and
/// chunk i draws from its own engine seeded with mix(master_seed, i), so
/// outputs do not depend on how chunks are spread over workers.
struct RngSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t chunk_size = 1u << 16;

  [[nodiscard]] std::uint64_t stream_seed(std::uint64_t chunk) const {
    return mix64(mix64(master_seed) ^ mix64(chunk + 0x5851f42d4c957f2dULL));
  }

  /// An independent stream family for a different purpose (config k,
  /// center draws, fresh re-estimates, ...).
  [[nodiscard]] RngSpec substream(std::uint64_t tag) const {
    return {mix64(master_seed ^ mix64(~tag)), chunk_size};
  }

  [[nodiscard]] std::size_t chunk_count(std::size_t n) const {
    return static_cast<std::size_t>((n + chunk_size - 1) / chunk_size);
  }
};

// Stream tags used across the library.
namespace streams {
inline constexpr std::uint64_t kCenters = 0xC3;
inline constexpr std::uint64_t kFresh = 0xF5;
inline constexpr std::uint64_t kConfigBase = 0x1000;
inline constexpr std::uint64_t kRestartBase = 0x2000;
}  // namespace streams

/// Row-major block of `count` points in R^dim.
class PointSet {
 public:
  PointSet(int dim, std::size_t count) : dim_(dim), count_(count), data_(count * dim) {}

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] std::size_t size() const { return count_; }
  [[nodiscard]] std::span<const double> operator[](std::size_t i) const {
    return {data_.data() + i * dim_, static_cast<std::size_t>(dim_)};
  }
  [[nodiscard]] std::span<double> operator[](std::size_t i) {
    return {data_.data() + i * dim_, static_cast<std::size_t>(dim_)};
  }
  [[nodiscard]] std::span<const double> flat() const { return data_; }

 private:
  int dim_;
  std::size_t count_;
  std::vector<double> data_;
};

namespace detail {

// Fills out[0 .. n*d) with chunk `chunk`'s standard Gaussian vectors;
// when `normalize` is set each vector is projected to the sphere.
inline void fill_chunk(int d, const RngSpec& rng, std::uint64_t chunk, std::size_t n, bool normalize,
                       double* out) {
  std::mt19937_64 engine(rng.stream_seed(chunk));
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    double* x = out + i * d;
    while (true) {
      double s = 0.0;
      for (int j = 0; j < d; ++j) {
        x[j] = gauss(engine);
        s += x[j] * x[j];
      }
      if (!normalize) break;
      if (s > 0.0) {
        const double inv = 1.0 / std::sqrt(s);
        for (int j = 0; j < d; ++j) x[j] *= inv;
        break;
      }
      // zero draw: resample
    }
  }
}

// Visits all `count` samples chunk by chunk, in parallel. body(chunk,
// first_index, n, data) sees a contiguous row-major block of n points.
template <typename Body>
void for_each_sample_chunk(int d, const RngSpec& rng, std::size_t count, bool normalize,
                           Body&& body) {
  const std::size_t chunks = rng.chunk_count(count);
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t first = c * rng.chunk_size;
    const std::size_t n = std::min<std::size_t>(rng.chunk_size, count - first);
    std::vector<double> buffer(n * d);
    fill_chunk(d, rng, c, n, normalize, buffer.data());
    body(c, first, n, std::span<const double>(buffer));
  });
}

}  // namespace detail

/// `count` i.i.d. uniform points on S^{d-1} (normalized Gaussian vectors).
inline PointSet sample_uniform_sphere(Dim d, const RngSpec& rng, std::size_t count) {
  detail::require(count >= 1, "sample_uniform_sphere: count must be >= 1");
  PointSet points(d, count);
  const std::size_t chunks = rng.chunk_count(count);
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t first = c * rng.chunk_size;
    const std::size_t n = std::min<std::size_t>(rng.chunk_size, count - first);
    detail::fill_chunk(d, rng, c, n, true, points[first].data());
  });
  return points;
}

/// A set of caps on S^{d-1}; antipodal configurations store pair k as
/// caps 2k and 2k+1 with opposite centers and equal mass.
class Configuration {
 public:
  Configuration(Dim d, std::vector<Cap> caps, bool antipodal, std::optional<double> alpha = {})
      : d_(d), caps_(std::move(caps)), antipodal_(antipodal), alpha_(alpha) {
    for (const auto& cap : caps_)
      detail::require(cap.dim() == d_, "Configuration: all caps must share the dimension");
    if (antipodal_) {
      detail::require(caps_.size() % 2 == 0, "Configuration: antipodal needs an even cap count");
      for (std::size_t k = 0; k + 1 < caps_.size(); k += 2) {
        const auto& a = caps_[k];
        const auto& b = caps_[k + 1];
        detail::require(a.mass() == b.mass(), "Configuration: antipodal pair masses differ");
        for (int j = 0; j < d_; ++j)
          detail::require(std::abs(a.center()[j] + b.center()[j]) <= 1e-12,
                          "Configuration: antipodal pair centers are not opposite");
      }
    }
  }

  [[nodiscard]] Dim dim() const { return d_; }
  [[nodiscard]] const std::vector<Cap>& caps() const { return caps_; }
  [[nodiscard]] std::size_t size() const { return caps_.size(); }
  [[nodiscard]] bool empty() const { return caps_.empty(); }
  [[nodiscard]] bool antipodal() const { return antipodal_; }
  [[nodiscard]] std::optional<double> alpha() const { return alpha_; }

  [[nodiscard]] double total_mass() const {
    double s = 0.0;
    for (const auto& c : caps_) s += c.mass();
    return s;
  }

  /// Copy with cap i replaced (or, for antipodal configurations, pair
  /// i / 2 moved rigidly so that cap i gets the new center).
  [[nodiscard]] Configuration with_center(std::size_t i, std::vector<double> center) const {
    std::vector<Cap> caps = caps_;
    if (antipodal_) {
      const std::size_t base = i - i % 2;
      if (i % 2 == 1)
        for (auto& v : center) v = -v;
      caps[base] = caps[base].moved_to(center);
      caps[base + 1] = caps[base].mirrored();
    } else {
      caps[i] = caps[i].moved_to(std::move(center));
    }
    return {d_, std::move(caps), antipodal_, alpha_};
  }

 private:
  Dim d_;
  std::vector<Cap> caps_;
  bool antipodal_;
  std::optional<double> alpha_;
};

/// N caps of mass alpha/N with i.i.d. uniform centers.
inline Configuration random_configuration(Dim d, int n_caps, double alpha, const RngSpec& rng) {
  detail::require(n_caps >= 1, "random_configuration: N must be >= 1");
  detail::require(alpha > 0.0 && alpha <= 1.0, "random_configuration: alpha must lie in (0, 1]");
  const double mass = alpha / n_caps;
  detail::require(mass <= 1.0, "random_configuration: alpha/N must not exceed 1");
  const double radius = radius_from_mass(d, mass);
  const PointSet centers = sample_uniform_sphere(d, rng.substream(streams::kCenters), n_caps);
  std::vector<Cap> caps;
  caps.reserve(n_caps);
  for (int i = 0; i < n_caps; ++i) {
    const auto c = centers[i];
    caps.push_back(Cap::from_radius({c.begin(), c.end()}, radius));
  }
  return {d, std::move(caps), false, alpha};
}

/// Pairs (x_i, -x_i) with common mass f(i); each f(i) must be below
/// mass_upper_limit(d).
inline Configuration antipodal_configuration(Dim d, const std::vector<std::vector<double>>& centers,
                                             std::span<const double> masses,
                                             std::optional<double> alpha = {}) {
  detail::require(centers.size() == masses.size(),
                  "antipodal_configuration: one mass per center required");
  const double limit = mass_upper_limit(d);
  std::vector<Cap> caps;
  caps.reserve(2 * centers.size());
  for (std::size_t i = 0; i < centers.size(); ++i) {
    detail::require(static_cast<int>(centers[i].size()) == d,
                    "antipodal_configuration: center dimension mismatch");
    detail::require(masses[i] > 0.0 && masses[i] < limit,
                    "antipodal_configuration: mass outside (0, mass_upper_limit(d))");
    caps.push_back(Cap::from_mass(centers[i], masses[i]));
    caps.push_back(caps.back().mirrored());
  }
  return {d, std::move(caps), true, alpha};
}

/// Equatorial band |x_d| <= N^{-1/(d-1)}.
struct ZoneSpec {
  int d = 0;
  std::int64_t n = 0;
  double half_width_angle = 0.0;  // arcsin(N^{-1/(d-1)})

  [[nodiscard]] double half_height() const { return std::sin(half_width_angle); }
};

inline ZoneSpec make_zone(Dim d, std::int64_t n) {
  detail::require(n >= 1, "make_zone: N must be >= 1");
  const double s = std::pow(static_cast<double>(n), -1.0 / (d - 1));
  return {d.value(), n, std::asin(s)};
}

inline bool in_zone(std::span<const double> x, const ZoneSpec& z) {
  detail::require(static_cast<int>(x.size()) == z.d, "in_zone: dimension mismatch");
  return std::abs(x.back()) <= std::pow(static_cast<double>(z.n), -1.0 / (z.d - 1));
}

}  // namespace capcover
