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

// Closed-form evaluators for the partial-covering bounds.
// Where the bounds carry O(.) remainders, the exact finite-N forms
// (powers and products) are used and the series only serve as
// cross-checks.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "capcover/cap_geometry.hpp"
#include "capcover/coverage.hpp"
#include "capcover/error.hpp"
#include "capcover/quadrature.hpp"
#include "capcover/special_functions.hpp"

namespace capcover {

/// (d, N, alpha) with alpha in (0, 1] fixed independently of N.
struct TheoremInputs {
  int d = 0;
  double n = 0.0;  // N; real so that 10^9-scale values are representable
  double alpha = 1.0;
};

struct BoundReport {
  TheoremInputs inputs;
  double base = 0.0;        // 1 - e^{-alpha}
  double beta_n = 0.0;      // exact random-covering excess over base
  double alpha_n = 0.0;     // zone term + Sidak-product remainder
  double cone_term = 0.0;   // (16 sqrt5 / d) alpha^{(d-3)/(d-1)}
  double zone_term = 0.0;   // sqrt(2d/pi) (alpha/N)^{1/(d-1)}
  double threshold_n = 0.0;
  double lower = 0.0;       // base + beta_n
  double upper = 0.0;       // base + cone_term + alpha_n
  bool precondition_met = false;
};

namespace detail {

// n log1p(-x) + n x for x = alpha / n, i.e. log[(1 - x)^n e^{alpha}].
inline double log_power_excess(double n, double x) { return n * log1m_plus_x(x); }

}  // namespace detail

/// beta_N = [1 - (1 - alpha/N)^N] - (1 - e^{-alpha}) = e^{-alpha} - (1 - alpha/N)^N.
inline double beta_lower(double n, double alpha) {
  detail::require(n >= 1.0, "beta_lower: N must be >= 1");
  detail::require(alpha > 0.0 && alpha <= 1.0, "beta_lower: alpha must lie in (0, 1]");
  const double x = alpha / n;
  detail::require(x <= 1.0, "beta_lower: alpha/N must not exceed 1");
  if (x == 1.0) return std::exp(-alpha);
  return std::exp(-alpha) * -std::expm1(detail::log_power_excess(n, x));
}

/// First summand of alpha_N: the zone allowance sqrt(2d/pi) (alpha/N)^{1/(d-1)}.
inline double zone_allowance(Dim d, double n, double alpha) {
  return std::sqrt(2.0 * d / std::numbers::pi) * std::pow(alpha / n, 1.0 / (d - 1));
}

/// alpha_N with the Sidak-product remainder in exact form:
/// sqrt(2d/pi)(alpha/N)^{1/(d-1)} + [e^{-alpha} - (1 - 2 alpha/N)^{N/2}]^+.
inline double alpha_correction(Dim d, double n, double alpha) {
  detail::require(d >= 3, "alpha_correction: d must be >= 3");
  detail::require(n >= 1.0, "alpha_correction: N must be >= 1");
  detail::require(alpha > 0.0 && alpha <= 1.0, "alpha_correction: alpha must lie in (0, 1]");
  const double x = 2.0 * alpha / n;
  double remainder = std::exp(-alpha);
  if (x < 1.0) remainder *= -std::expm1(detail::log_power_excess(0.5 * n, x));
  return zone_allowance(d, n, alpha) + std::max(0.0, remainder);
}

/// (16 sqrt5 / d) alpha^{(d-3)/(d-1)}.
inline double cone_term(Dim d, double alpha) {
  detail::require(d >= 4, "cone_term: d must be >= 4");
  detail::require(alpha > 0.0 && alpha <= 1.0, "cone_term: alpha must lie in (0, 1]");
  return 16.0 * std::sqrt(5.0) / d * std::pow(alpha, (d - 3.0) / (d - 1.0));
}

/// (15(d-2)(d-4) / (2(d-3)))^{(d-1)/2}; d = 4 has a zero base and returns 1.
inline double threshold_n(Dim d) {
  detail::require(d >= 4, "threshold_N: d must be >= 4");
  if (d == 4) return 1.0;
  const double base = 15.0 * (d - 2.0) * (d - 4.0) / (2.0 * (d - 3.0));
  return std::pow(base, 0.5 * (d - 1.0));
}

/// 2 vol(S^{d-2}) / vol(S^{d-1}), the latitude-density normalizer.
inline double zone_coefficient(Dim d) {
  return 2.0 * std::exp(sphere_surface_log(d - 1) - sphere_surface_log(d));
}

struct ZoneBound {
  double full = 0.0;
  double simplified = 0.0;
};

/// Closed-form upper bounds on the equatorial zone measure.
inline ZoneBound zone_bound(Dim d, double n) {
  detail::require(d >= 5, "zone_bound: d must be >= 5");
  detail::require(n >= 2.0, "zone_bound: N must be >= 2");
  const double x = std::pow(n, -1.0 / (d - 1));
  const double x3 = x * x * x;
  const double x5 = x3 * x * x;
  const double poly = x - (d - 3.0) / 6.0 * x3 + 1.25 * (d - 2.0) * (d - 4.0) * x5;
  return {zone_coefficient(d) * poly, std::sqrt(2.0 * d / std::numbers::pi) * x};
}

/// prod_i (1 - 2 f_i), evaluated in log space.
inline double sidak_product_bound(std::span<const double> pair_masses) {
  double log_sum = 0.0;
  for (double f : pair_masses) {
    detail::require(f > 0.0 && f < 0.5, "sidak_product_bound: each f must lie in (0, 1/2)");
    log_sum += std::log1p(-2.0 * f);
  }
  return std::exp(log_sum);
}

inline BoundReport theorem_bounds(const TheoremInputs& in) {
  const Dim d(in.d);
  detail::require(d >= 5, "theorem_bounds: d must be >= 5");
  detail::require(in.alpha > 0.0 && in.alpha <= 1.0, "theorem_bounds: alpha must lie in (0, 1]");
  detail::require(in.alpha / in.n < 1.0, "theorem_bounds: alpha/N must be < 1");
  BoundReport r;
  r.inputs = in;
  r.base = -std::expm1(-in.alpha);
  r.beta_n = beta_lower(in.n, in.alpha);
  r.alpha_n = alpha_correction(d, in.n, in.alpha);
  r.cone_term = cone_term(d, in.alpha);
  r.zone_term = zone_allowance(d, in.n, in.alpha);
  r.threshold_n = threshold_n(d);
  r.lower = r.base + r.beta_n;
  r.upper = r.base + r.cone_term + r.alpha_n;
  r.precondition_met = in.n >= r.threshold_n;
  return r;
}

struct EulerBracket {
  int d = 0;
  double coverage_lower = 0.0;  // 1 - e^{-1}
  double coverage_upper = 0.0;  // 1 - e^{-1} + 16 sqrt5 / d
  double e_lower = 0.0;         // 1 / (1 - coverage_lower)
  double e_upper = 0.0;         // 1 / (1 - coverage_upper), +inf when vacuous
};

/// N -> infinity brackets for alpha = 1 and the induced brackets around e.
inline std::vector<EulerBracket> euler_report(std::span<const int> dims) {
  std::vector<EulerBracket> out;
  out.reserve(dims.size());
  const double base = -std::expm1(-1.0);
  for (int dv : dims) {
    const Dim d(dv);
    detail::require(d >= 5, "euler_report: d must be >= 5");
    EulerBracket b;
    b.d = d;
    b.coverage_lower = base;
    b.coverage_upper = base + cone_term(d, 1.0);
    b.e_lower = 1.0 / std::exp(-1.0);
    const double gap = std::exp(-1.0) - cone_term(d, 1.0);
    b.e_upper = gap > 0.0 ? 1.0 / gap : std::numeric_limits<double>::infinity();
    out.push_back(b);
  }
  return out;
}

struct LdivConstant {
  double value = 0.0;            // bracket / (pi e)
  double bracket = 0.0;          // sum of the two integrals
  double first_integral = 0.0;   // int_0^1 (1 - 2^{-t}) / t dt
  double second_integral = 0.0;  // int_0^inf 2^{-e^t} dt
  double truncation = 0.0;       // upper limit used for the second integral
  double remainder_bound = 0.0;  // bound on the discarded tail
  double abs_error = 0.0;
};

namespace detail {

inline double ldiv_first_integrand(double t) {
  if (t == 0.0) return std::numbers::ln2;
  return -std::expm1(-t * std::numbers::ln2) / t;
}

inline double ldiv_second_integrand(double t) { return std::exp(-std::numbers::ln2 * std::exp(t)); }

// 2^{-e^T} < 1e-18 beyond T; the tail int_T^inf 2^{-e^t} dt equals
// int_{e^T}^inf 2^{-u} / u du <= 2^{-e^T} / (e^T ln 2).
inline double ldiv_truncation() { return std::log(18.0 * std::numbers::ln10 / std::numbers::ln2); }

inline double ldiv_remainder_bound(double upper) {
  const double u = std::exp(upper);
  return std::exp(-std::numbers::ln2 * u) / (u * std::numbers::ln2);
}

template <typename Integrator>
LdivConstant ldiv_with(Integrator&& integrate) {
  LdivConstant c;
  c.truncation = ldiv_truncation();
  c.remainder_bound = ldiv_remainder_bound(c.truncation);
  const auto first = integrate(ldiv_first_integrand, 0.0, 1.0);
  const auto second = integrate(ldiv_second_integrand, 0.0, c.truncation);
  c.first_integral = first.value;
  c.second_integral = second.value;
  c.bracket = first.value + second.value;
  c.value = c.bracket / (std::numbers::pi * std::numbers::e);
  c.abs_error = (first.abs_error + second.abs_error + c.remainder_bound) /
                (std::numbers::pi * std::numbers::e);
  return c;
}

}  // namespace detail

/// (pi e)^{-1} (int_0^1 t^{-1}(1 - 2^{-t}) dt + int_0^inf 2^{-e^t} dt), by
/// adaptive Gauss-Kronrod.
inline LdivConstant ldiv_upper_constant() {
  return detail::ldiv_with([](auto f, double a, double b) {
    return integrate_gk(f, a, b, 1e-13, 1e-14);
  });
}

/// The same constant by adaptive Simpson; an independent second route.
inline LdivConstant ldiv_upper_constant_simpson() {
  return detail::ldiv_with([](auto f, double a, double b) {
    return integrate_simpson(f, a, b, 1e-13);
  });
}

/// Earlier large-d estimate of the covered proportion, 0.92334.
inline constexpr double efr_reference() { return 0.92334; }

}  // namespace capcover
