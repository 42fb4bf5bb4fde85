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
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "capcover/error.hpp"
#include "capcover/special_functions.hpp"

namespace capcover {

/// Ambient dimension of R^d; the sphere is S^{d-1}.
class Dim {
 public:
  explicit Dim(int d) : d_(d) {
    detail::require(d >= 2, "Dim: dimension must be >= 2, got " + std::to_string(d));
  }
  [[nodiscard]] constexpr int value() const { return d_; }
  constexpr operator int() const { return d_; }  // NOLINT(google-explicit-constructor)

 private:
  int d_;
};

inline double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline double norm(std::span<const double> x) { return std::sqrt(dot(x, x)); }

/// ln vol_d(B_d) = (d/2) ln pi - ln Gamma(d/2 + 1).
inline double ball_volume_log(int d) {
  detail::require(d >= 1, "ball_volume_log: d must be >= 1");
  return 0.5 * d * std::log(std::numbers::pi) - log_gamma(0.5 * d + 1.0);
}

/// ln vol_{d-1}(S^{d-1}) via the cone-volume formula vol(dB_d) = d vol(B_d).
inline double sphere_surface_log(int d) {
  return std::log(static_cast<double>(d)) + ball_volume_log(d);
}

/// Normalized surface measure of a geodesic cap of angular radius theta.
inline double cap_mass_from_radius(Dim d, double theta) {
  detail::require(theta > 0.0 && theta <= std::numbers::pi,
                  "cap_mass_from_radius: theta must lie in (0, pi]");
  if (theta == std::numbers::pi) return 1.0;
  if (theta > 0.5 * std::numbers::pi) return 1.0 - cap_mass_from_radius(d, std::numbers::pi - theta);
  const double a = 0.5 * (d - 1);
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  // sigma(cap) = I_{sin^2}((d-1)/2, 1/2) / 2 = 1/2 - I_{cos^2}(1/2, (d-1)/2) / 2.
  // Take the first form while its continued fraction runs on sin^2 directly.
  if (s * s < (a + 1.0) / (a + 2.5)) return 0.5 * reg_inc_beta(s * s, a, 0.5);
  return 0.5 - 0.5 * reg_inc_beta(c * c, 0.5, a);
}

/// Angular radius of the cap with normalized mass m.
inline double radius_from_mass(Dim d, double m, Tolerance tol = {}) {
  detail::require(m > 0.0 && m <= 1.0, "radius_from_mass: mass must lie in (0, 1]");
  if (m == 1.0) return std::numbers::pi;
  if (m == 0.5) return 0.5 * std::numbers::pi;
  if (m > 0.5) return std::numbers::pi - radius_from_mass(d, 1.0 - m, tol);
  const double a = 0.5 * (d - 1);
  const double p = 2.0 * m;
  if (p <= 0.5) {
    const double s2 = inv_reg_inc_beta(p, a, 0.5, tol);
    return std::asin(std::sqrt(s2));
  }
  const double c2 = inv_reg_inc_beta(1.0 - p, 0.5, a, tol);
  return std::acos(std::sqrt(c2));
}

/// Offset h > 0 of the hyperplane whose far half-space has Gaussian mass f.
inline double gaussian_halfspace_offset(double f) {
  detail::require(f > 0.0 && f < 0.5, "gaussian_halfspace_offset: f must lie in (0, 1/2)");
  return inverse_gauss_tail(f);
}

/// eta = sqrt(W((sqrt(2 pi) f)^-2)), the Lambert-W upper bound on the offset.
inline double eta_bound(double f) {
  detail::require(f > 0.0 && std::isfinite(f), "eta_bound: f must be positive");
  const double log_arg = -2.0 * (std::log(f) + 0.5 * std::log(2.0 * std::numbers::pi));
  return std::sqrt(lambert_w0_of_exp(log_arg));
}

/// Largest admissible pair mass for the antipodal construction:
/// 0.9^{(d-1)/2} vol_{d-1}(B_{d-1}) / vol_{d-1}(S^{d-1}).
inline double mass_upper_limit(Dim d) {
  return std::exp(0.5 * (d - 1) * std::log(0.9) + ball_volume_log(d - 1) - sphere_surface_log(d));
}

/// A geodesic cap on S^{d-1}. Immutable; the cosine threshold is cached
/// because it is the hot-path value in membership tests.
class Cap {
 public:
  static Cap from_mass(std::vector<double> center, double mass) {
    detail::require(center.size() >= 2, "Cap: center must have dimension >= 2");
    detail::require(mass > 0.0 && mass <= 1.0, "Cap: mass must lie in (0, 1]");
    const Dim d(static_cast<int>(center.size()));
    return Cap(std::move(center), mass, radius_from_mass(d, mass));
  }

  static Cap from_radius(std::vector<double> center, double theta) {
    detail::require(center.size() >= 2, "Cap: center must have dimension >= 2");
    const Dim d(static_cast<int>(center.size()));
    return Cap(std::move(center), cap_mass_from_radius(d, theta), theta);
  }

  [[nodiscard]] int dim() const { return static_cast<int>(center_.size()); }
  [[nodiscard]] std::span<const double> center() const { return center_; }
  [[nodiscard]] double mass() const { return mass_; }
  [[nodiscard]] double geodesic_radius() const { return radius_; }
  [[nodiscard]] double cos_threshold() const { return cos_threshold_; }
  [[nodiscard]] bool is_full() const { return mass_ == 1.0; }

  /// True if the unit vector p lies in the cap.
  [[nodiscard]] bool contains(std::span<const double> p) const {
    return is_full() || dot(p, center_) >= cos_threshold_;
  }

  /// The same cap centered at the antipode.
  [[nodiscard]] Cap mirrored() const {
    std::vector<double> c(center_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = -center_[i];
    return Cap(std::move(c), mass_, radius_);
  }

  /// The same cap moved to a new (unit) center.
  [[nodiscard]] Cap moved_to(std::vector<double> center) const {
    detail::require(center.size() == center_.size(), "Cap: dimension mismatch");
    return Cap(std::move(center), mass_, radius_);
  }

 private:
  Cap(std::vector<double> center, double mass, double radius)
      : center_(std::move(center)), mass_(mass), radius_(radius), cos_threshold_(std::cos(radius)) {
    detail::require(std::abs(norm(center_) - 1.0) <= 1e-12, "Cap: center must be a unit vector");
    detail::require(radius_ > 0.0 && radius_ <= std::numbers::pi, "Cap: radius must lie in (0, pi]");
    if (mass_ == 1.0) cos_threshold_ = -1.0;
    if (radius_ == 0.5 * std::numbers::pi) cos_threshold_ = 0.0;
  }

  std::vector<double> center_;
  double mass_;
  double radius_;
  double cos_threshold_;
};

/// Gaussian truncated-cone data for a cap of mass f.
struct ConeGeometry {
  int d = 0;
  double f = 0.0;
  double offset = 0.0;  // h with Q(h) = f
  double eta = 0.0;     // Lambert-W bound on h
};

inline ConeGeometry make_cone_geometry(Dim d, double f) {
  detail::require(f > 0.0 && f < mass_upper_limit(d),
                  "cone geometry: f must lie in (0, mass_upper_limit(d))");
  return {d.value(), f, gaussian_halfspace_offset(f), eta_bound(f)};
}

}  // namespace capcover
