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
#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "capcover/bounds.hpp"
#include "capcover/cap_geometry.hpp"
#include "capcover/error.hpp"
#include "capcover/quadrature.hpp"
#include "capcover/sampling.hpp"
#include "capcover/special_functions.hpp"

namespace capcover {

/// {x : |<x, u>| <= t}.
struct Slab {
  std::vector<double> normal;
  double half_width = 1.0;

  [[nodiscard]] double gaussian_measure() const { return 1.0 - 2.0 * gauss_tail(half_width); }
};

enum class CheckKind { kIdentity, kInequality };

/// Outcome of one numerical check. Identity checks pass when
/// |lhs - rhs| <= tolerance, inequality checks when lhs <= rhs + tolerance.
struct VerificationReport {
  std::string name;
  bool passed = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  std::string detail;
  CheckKind kind = CheckKind::kInequality;
};

inline VerificationReport make_report(std::string name, CheckKind kind, double lhs, double rhs,
                                      double tolerance, std::string detail = {}) {
  const bool ok = kind == CheckKind::kIdentity ? std::abs(lhs - rhs) <= tolerance
                                               : lhs <= rhs + tolerance;
  return {std::move(name), ok, lhs, rhs, tolerance, std::move(detail), kind};
}

/// Gaussian measure of the cone spanned by a cap equals the cap's mass:
/// hit fraction of x/|x| for standard Gaussian x, compared within 4 SE.
inline VerificationReport cone_measure_identity_mc(const Cap& cap, const RngSpec& rng,
                                                   std::uint64_t n_samples) {
  detail::require(n_samples >= 10000, "cone_measure_identity_mc: need at least 1e4 samples");
  const int d = cap.dim();
  const auto center = cap.center();
  const double cos_t = cap.cos_threshold();
  std::vector<std::uint64_t> hits(rng.chunk_count(n_samples), 0);
  detail::for_each_sample_chunk(
      d, rng, n_samples, false,
      [&](std::size_t chunk, std::size_t, std::size_t n, std::span<const double> pts) {
        std::uint64_t h = 0;
        for (std::size_t i = 0; i < n; ++i) {
          const auto x = pts.subspan(i * d, d);
          if (cap.is_full() || dot(x, center) >= cos_t * norm(x)) ++h;
        }
        hits[chunk] = h;
      });
  const auto total = std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
  const double p = static_cast<double>(total) / static_cast<double>(n_samples);
  const double m = cap.mass();
  const double se = std::sqrt(m * (1.0 - m) / static_cast<double>(n_samples));
  std::ostringstream os;
  os << "d=" << d << " mass=" << m << " hits=" << total << "/" << n_samples << " se=" << se;
  return make_report("cone_measure_identity", CheckKind::kIdentity, p, m, 4.0 * se, os.str());
}

/// Per-cone constant from the truncated-cone estimate: (8 sqrt5 / d) f^{(d-3)/(d-1)}.
inline double truncated_cone_bound(Dim d, double f) {
  return 8.0 * std::sqrt(5.0) / d * std::pow(f, (d - 3.0) / (d - 1.0));
}

/// Gaussian measure of the spanned cone truncated at height eta:
///   c(d) int_0^eta e^{-t^2/2} gamma((d-1)/2, R(t)^2 / 2) dt,
///   c(d) = vol(B_{d-2}) / (2^{3/2} pi^{d/2}),  R(t) = r t / sqrt(1 - r^2),
///   r = (f vol(S^{d-1}) / vol(B_{d-1}))^{1/(d-1)}.
inline double truncated_cone_measure(const ConeGeometry& g) {
  const Dim d(g.d);
  detail::require(d >= 5, "truncated_cone_measure: d must be >= 5");
  detail::require(g.f > 0.0 && g.f < mass_upper_limit(d),
                  "truncated_cone_measure: f outside (0, mass_upper_limit(d))");
  const double log_c =
      ball_volume_log(d - 2) - 1.5 * std::numbers::ln2 - 0.5 * d * std::log(std::numbers::pi);
  const double log_r =
      (std::log(g.f) + sphere_surface_log(d) - ball_volume_log(d - 1)) / (d - 1.0);
  const double r = std::exp(log_r);
  const double slope = r / std::sqrt(1.0 - r * r);
  const double a = 0.5 * (d - 1.0);
  auto integrand = [&](double t) {
    if (t <= 0.0) return 0.0;
    const double rt = slope * t;
    return std::exp(log_c - 0.5 * t * t + log_lower_inc_gamma(a, 0.5 * rt * rt));
  };
  return integrate_gk(integrand, 0.0, g.eta, 0.0, 1e-10).value;
}

/// Sidak's inequality for symmetric slabs: Monte Carlo estimate of the
/// Gaussian measure of the intersection versus the product of measures.
inline VerificationReport sidak_mc(const std::vector<Slab>& slabs, const RngSpec& rng,
                                   std::uint64_t n_samples) {
  detail::require(!slabs.empty() && slabs.size() <= 32, "sidak_mc: need 1..32 slabs");
  detail::require(n_samples >= 100000, "sidak_mc: need at least 1e5 samples");
  const int d = static_cast<int>(slabs.front().normal.size());
  double product = 1.0;
  for (const auto& s : slabs) {
    detail::require(static_cast<int>(s.normal.size()) == d, "sidak_mc: slab dimension mismatch");
    detail::require(std::abs(norm(s.normal) - 1.0) <= 1e-12, "sidak_mc: normals must be unit");
    detail::require(s.half_width > 0.0, "sidak_mc: half width must be positive");
    product *= s.gaussian_measure();
  }
  std::vector<std::uint64_t> hits(rng.chunk_count(n_samples), 0);
  detail::for_each_sample_chunk(
      d, rng, n_samples, false,
      [&](std::size_t chunk, std::size_t, std::size_t n, std::span<const double> pts) {
        std::uint64_t h = 0;
        for (std::size_t i = 0; i < n; ++i) {
          const auto x = pts.subspan(i * d, d);
          bool inside = true;
          for (const auto& s : slabs) {
            if (std::abs(dot(x, s.normal)) > s.half_width) {
              inside = false;
              break;
            }
          }
          h += inside ? 1 : 0;
        }
        hits[chunk] = h;
      });
  const auto total = std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
  const double p = static_cast<double>(total) / static_cast<double>(n_samples);
  const double se = std::sqrt(std::max(p * (1.0 - p), 1.0 / n_samples) / n_samples);
  std::ostringstream os;
  os << "d=" << d << " m=" << slabs.size() << " intersection=" << p << " product=" << product
     << " se=" << se;
  // product <= intersection  <=>  -intersection <= -product
  return make_report("sidak", CheckKind::kInequality, product, p, 4.0 * se, os.str());
}

/// The zone integral as used in the zone estimate:
///   2 vol(S^{d-2}) / vol(S^{d-1}) int_0^{arcsin(N^{-1/(d-1)})} (1 - x^2)^{(d-2)/2} dx.
inline double zone_quadrature(Dim d, double n) {
  detail::require(d >= 3, "zone_quadrature: d must be >= 3");
  detail::require(n >= 2.0, "zone_quadrature: N must be >= 2");
  const double upper = std::asin(std::pow(n, -1.0 / (d - 1)));
  const double k = 0.5 * (d - 2.0);
  const auto res =
      integrate_gk([k](double x) { return std::pow(1.0 - x * x, k); }, 0.0, upper, 1e-15, 1e-15);
  return zone_coefficient(d) * res.value;
}

/// Exact sigma({x : |x_d| <= N^{-1/(d-1)}}) = I_{s^2}(1/2, (d-1)/2), the
/// measure that in_zone samples. Differs from zone_quadrature at order s^3.
inline double zone_measure_exact(Dim d, double n) {
  detail::require(n >= 1.0, "zone_measure_exact: N must be >= 1");
  const double s = std::pow(n, -1.0 / (d - 1));
  return reg_inc_beta(s * s, 0.5, 0.5 * (d - 1.0));
}

namespace detail {

inline bool le_one_ulp(double lhs, double rhs) {
  return lhs <= std::nextafter(rhs, std::numeric_limits<double>::infinity());
}

// Evaluates lhs(x) <= rhs(x) on `points` equispaced points of [lo, hi].
template <typename L, typename R>
VerificationReport grid_check(std::string name, double lo, double hi, std::size_t points, L&& lhs,
                              R&& rhs) {
  std::size_t failures = 0;
  double worst_gap = -std::numeric_limits<double>::infinity();
  double worst_at = lo;
  for (std::size_t i = 0; i < points; ++i) {
    const double x = (i + 1 == points) ? hi : lo + (hi - lo) * static_cast<double>(i) / (points - 1);
    const double l = lhs(x);
    const double r = rhs(x);
    if (!le_one_ulp(l, r)) ++failures;
    if (l - r > worst_gap) {
      worst_gap = l - r;
      worst_at = x;
    }
  }
  std::ostringstream os;
  os << points << " points on [" << lo << ", " << hi << "], " << failures
     << " violations; max(lhs - rhs) = " << worst_gap << " at x = " << worst_at;
  VerificationReport rep{std::move(name), failures == 0, worst_gap, 0.0, 0.0, os.str(),
                         CheckKind::kInequality};
  return rep;
}

}  // namespace detail

/// Deterministic grid checks of the scalar inequalities used in the zone
/// and cone estimates. Each passes only if every grid point satisfies the
/// inequality up to one ulp.
inline std::vector<VerificationReport> scalar_inequalities(std::size_t points = 100000) {
  std::vector<VerificationReport> out;
  out.push_back(detail::grid_check(
      "arcsin_lower", 0.0, 1.0, points, [](double t) { return t + t * t * t / 6.0; },
      [](double t) { return std::asin(t); }));
  out.push_back(detail::grid_check(
      "arcsin_upper", 0.0, 1.0, points, [](double t) { return std::asin(t); },
      [](double t) { return t + t * t * t / 6.0 + std::pow(t, 5); }));
  out.push_back(detail::grid_check(
      "quintic_polynomial", 0.0, 1.0, points,
      [](double x) { return std::pow(1.0 + x / 6.0 + x * x, 5); },
      [](double x) { return 1.0 + 5.0 * x / 6.0 + 47.0 * x * x; }));

  // (1 - u)^k <= 1 - k u + k (k - 1) u^2 / 2 on u in [0, 1], k = 1, 3/2, ..., 100.
  {
    std::size_t failures = 0;
    std::vector<double> failing_k;
    double worst_gap = -std::numeric_limits<double>::infinity();
    double worst_k = 1.0;
    double worst_u = 0.0;
    for (int twice_k = 2; twice_k <= 200; ++twice_k) {
      const double k = 0.5 * twice_k;
      std::size_t local = 0;
      for (std::size_t i = 0; i < points; ++i) {
        const double u = (i + 1 == points) ? 1.0 : static_cast<double>(i) / (points - 1);
        // right side expanded in v = 1 - u; for k = 2 both sides are v^2
        const double v = 1.0 - u;
        const double l = std::pow(v, k);
        const double r = 0.5 * (k - 1.0) * (k - 2.0) + k * (2.0 - k) * v + 0.5 * k * (k - 1.0) * v * v;
        if (!detail::le_one_ulp(l, r)) ++local;
        if (l - r > worst_gap) {
          worst_gap = l - r;
          worst_k = k;
          worst_u = u;
        }
      }
      if (local > 0) failing_k.push_back(k);
      failures += local;
    }
    std::ostringstream os;
    os << points << " points on u in [0, 1] for 199 values of k, " << failures
       << " violations; max(lhs - rhs) = " << worst_gap << " at k = " << worst_k
       << ", u = " << worst_u;
    if (!failing_k.empty()) {
      os << "; failing k:";
      for (double k : failing_k) os << ' ' << k;
    }
    out.push_back({"binomial_quadratic", failures == 0, worst_gap, 0.0, 0.0, os.str(),
                   CheckKind::kInequality});
  }

  // (1/h - 1/h^3) phi(h) <= Q(h) <= phi(h) / h, in log space so the far
  // tail does not underflow.
  {
    auto log_phi = [](double h) { return -0.5 * h * h - detail::kHalfLog2Pi; };
    auto lower = detail::grid_check(
        "gauss_tail_lower", 1.01, 40.0, points,
        [&](double h) { return log_phi(h) + std::log(1.0 / h - 1.0 / (h * h * h)); },
        [](double h) { return log_gauss_tail(h); });
    auto upper = detail::grid_check(
        "gauss_tail_upper", 1.01, 40.0, points, [](double h) { return log_gauss_tail(h); },
        [&](double h) { return log_phi(h) - std::log(h); });
    out.push_back(std::move(lower));
    out.push_back(std::move(upper));
  }
  return out;
}

}  // namespace capcover
