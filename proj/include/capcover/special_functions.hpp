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

// Scalar special functions shared by the geometry, bounds and verification
// code. Gamma and beta quantities are carried in log space so that volume
// ratios stay finite for dimensions in the tens of thousands.

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "capcover/error.hpp"

namespace capcover {

/// Convergence controls for the iterative inverses.
struct Tolerance {
  double rel_tol = 1e-12;
  int max_iter = 200;

  constexpr Tolerance() = default;
  Tolerance(double rel, int iters) : rel_tol(rel), max_iter(iters) {
    detail::require(rel > 0.0, "Tolerance: rel_tol must be positive");
    detail::require(iters >= 1, "Tolerance: max_iter must be >= 1");
  }
};

namespace detail {

inline constexpr double kHalfLog2Pi = 0.918938533204672741780329736406;  // ln(2 pi) / 2
inline constexpr double kStirlingCutoff = 10.0;

// lgamma(x) - [(x - 1/2) ln x - x + ln(2 pi)/2] for x >= 10, from the
// asymptotic series. Truncation error is below 3e-17 at x = 10.
inline double stirling_correction(double x) {
  const double r = 1.0 / x;
  const double r2 = r * r;
  return r * (1.0 / 12.0 -
              r2 * (1.0 / 360.0 -
                    r2 * (1.0 / 1260.0 -
                          r2 * (1.0 / 1680.0 -
                                r2 * (1.0 / 1188.0 - r2 * (691.0 / 360360.0 - r2 / 156.0))))));
}

// ln(1 - x) + x for 0 <= x < 1, without cancellation near zero.
inline double log1m_plus_x(double x) {
  if (x < 1e-2) {
    // -(x^2/2 + x^3/3 + ...)
    double term = x;
    double sum = 0.0;
    for (int k = 2; k < 40; ++k) {
      term *= x;
      sum += term / k;
      if (term < 1e-18 * sum) break;
    }
    return -sum;
  }
  return std::log1p(-x) + x;
}

}  // namespace detail

/// ln Gamma(x) for x > 0.
inline double log_gamma(double x) {
  detail::require(x > 0.0 && std::isfinite(x), "log_gamma: x must be positive and finite");
  if (x >= detail::kStirlingCutoff) {
    return (x - 0.5) * std::log(x) - x + detail::kHalfLog2Pi + detail::stirling_correction(x);
  }
  // Recur upward into the asymptotic range: Gamma(x) = Gamma(x + n) / (x (x+1) ... (x+n-1)).
  double shifted = x;
  double product = 1.0;
  while (shifted < detail::kStirlingCutoff) {
    product *= shifted;
    shifted += 1.0;
  }
  return log_gamma(shifted) - std::log(product);
}

/// ln Gamma(x + delta) - ln Gamma(x), accurate when x is large and delta
/// is small relative to x.
inline double log_gamma_difference(double x, double delta) {
  detail::require(x > 0.0 && x + delta > 0.0, "log_gamma_difference: arguments must be positive");
  if (x < detail::kStirlingCutoff || x + delta < detail::kStirlingCutoff) {
    return log_gamma(x + delta) - log_gamma(x);
  }
  const double y = x + delta;
  // (y - 1/2) ln y - y - (x - 1/2) ln x + x
  //   = (x - 1/2) ln(y/x) + delta ln y - delta
  return (x - 0.5) * std::log1p(delta / x) + delta * std::log(y) - delta +
         detail::stirling_correction(y) - detail::stirling_correction(x);
}

/// ln B(a, b).
inline double log_beta(double a, double b) {
  detail::require(a > 0.0 && b > 0.0, "log_beta: a, b must be positive");
  const double small = std::min(a, b);
  const double big = std::max(a, b);
  return log_gamma(small) - log_gamma_difference(big, small);
}

namespace detail {

// Continued fraction for I_x(a, b) (modified Lentz); converges fast for
// x < (a + 1) / (a + b + 2).
inline double inc_beta_cf(double x, double a, double b) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-16;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  const int max_terms = 20000;
  for (int m = 1; m <= max_terms; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw NumericError("reg_inc_beta: continued fraction did not converge", x, x);
}

}  // namespace detail

/// I_x(a, b) together with its complement 1 - I_x(a, b); whichever side is
/// small is computed directly so neither loses relative precision.
inline std::pair<double, double> reg_inc_beta_pair(double x, double a, double b) {
  detail::require(x >= 0.0 && x <= 1.0, "reg_inc_beta: x must lie in [0, 1]");
  detail::require(a > 0.0 && b > 0.0 && std::isfinite(a) && std::isfinite(b),
                  "reg_inc_beta: a, b must be positive");
  if (x == 0.0) return {0.0, 1.0};
  if (x == 1.0) return {1.0, 0.0};
  const double log_front = a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    const double lower = std::exp(log_front) * detail::inc_beta_cf(x, a, b) / a;
    return {lower, 1.0 - lower};
  }
  const double upper = std::exp(log_front) * detail::inc_beta_cf(1.0 - x, b, a) / b;
  return {1.0 - upper, upper};
}

/// Regularized incomplete beta function I_x(a, b).
inline double reg_inc_beta(double x, double a, double b) { return reg_inc_beta_pair(x, a, b).first; }

/// Inverse of x -> I_x(a, b). Bracketed bisection on [0, 1] with Newton
/// steps taken in log space on whichever tail is smaller. When no double
/// reaches the tolerance (x pinned against 1 for small b) the nearest
/// representable x is returned.
inline double inv_reg_inc_beta(double p, double a, double b, Tolerance tol = {}) {
  detail::require(p >= 0.0 && p <= 1.0, "inv_reg_inc_beta: p must lie in [0, 1]");
  detail::require(a > 0.0 && b > 0.0, "inv_reg_inc_beta: a, b must be positive");
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;

  const bool left_tail = p <= 0.5;
  const double target = left_tail ? p : 1.0 - p;  // exact for p >= 0.5
  const double log_target = std::log(target);
  const double allowed = tol.rel_tol * std::max(p, 1e-300);
  const double log_beta_ab = log_beta(a, b);

  double lo = 0.0;
  double hi = 1.0;
  double x = 0.5;
  double best_x = x;
  double best_residual = std::numeric_limits<double>::infinity();

  for (int iter = 0; iter < tol.max_iter; ++iter) {
    const auto [lower, upper] = reg_inc_beta_pair(x, a, b);
    const double value = left_tail ? lower : upper;
    const double residual = std::abs(value - target);
    if (residual < best_residual) {
      best_residual = residual;
      best_x = x;
    }
    if (residual <= allowed) return x;

    const bool below = left_tail ? value < target : value > target;
    if (below) {
      lo = x;
    } else {
      hi = x;
    }

    double next = std::numeric_limits<double>::quiet_NaN();
    if (value > 0.0) {
      const double log_density =
          (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - log_beta_ab;
      const double slope = std::exp(log_density - std::log(value)) * (left_tail ? 1.0 : -1.0);
      next = x - (std::log(value) - log_target) / slope;
    }
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == x || std::nextafter(lo, 1.0) >= hi) {
      // Bracket is down to adjacent doubles: return the better endpoint.
      for (double e : {lo, hi}) {
        const auto [el, eu] = reg_inc_beta_pair(e, a, b);
        const double r = std::abs((left_tail ? el : eu) - target);
        if (r < best_residual) {
          best_residual = r;
          best_x = e;
        }
      }
      return best_x;
    }
    x = next;
  }
  if (best_residual <= allowed) return best_x;
  throw NumericError("inv_reg_inc_beta: no convergence within max_iter", lo, hi);
}

/// ln of the lower incomplete gamma function ln gamma(a, x), a >= 1.
inline double log_lower_inc_gamma(double a, double x) {
  detail::require(a >= 1.0 && std::isfinite(a), "lower_inc_gamma: a must be >= 1");
  detail::require(x >= 0.0, "lower_inc_gamma: x must be nonnegative");
  if (x == 0.0) return -std::numeric_limits<double>::infinity();
  if (x < a + 1.0) {
    // gamma(a, x) = x^a e^-x sum_k x^k / (a (a+1) ... (a+k))
    double term = 1.0 / a;
    double sum = term;
    for (int k = 1; k < 100000; ++k) {
      term *= x / (a + k);
      sum += term;
      if (term < sum * 1e-17) break;
    }
    return a * std::log(x) - x + std::log(sum);
  }
  // Upper tail by continued fraction, then gamma = Gamma(a) (1 - Q).
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  const double log_gamma_a = log_gamma(a);
  const double q = std::exp(a * std::log(x) - x - log_gamma_a) * h;
  return log_gamma_a + std::log1p(-q);
}

/// Lower incomplete gamma gamma(a, x) = int_0^x s^(a-1) e^(-s) ds for a >= 1.
inline double lower_inc_gamma(double a, double x) {
  if (x == 0.0) {
    detail::require(a >= 1.0, "lower_inc_gamma: a must be >= 1");
    return 0.0;
  }
  return std::exp(log_lower_inc_gamma(a, x));
}

/// Principal branch W0 of the Lambert W function on [0, inf).
inline double lambert_w0(double x) {
  detail::require(x >= 0.0 && !std::isnan(x), "lambert_w0: x must be nonnegative");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;
  double w;
  if (x < std::numbers::e) {
    w = std::log1p(x);
    w *= 1.0 - std::log1p(w) / (2.0 + w);
  } else {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }
  for (int i = 0; i < 64; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(w))) break;
  }
  return w;
}

/// W0(exp(log_x)) without forming exp(log_x); usable when the argument
/// itself would overflow.
inline double lambert_w0_of_exp(double log_x) {
  if (log_x < 500.0) return lambert_w0(std::exp(log_x));
  // Solve w + ln w = log_x by Newton.
  double w = log_x - std::log(log_x);
  for (int i = 0; i < 64; ++i) {
    const double step = (w + std::log(w) - log_x) / (1.0 + 1.0 / w);
    w -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * w) break;
  }
  return w;
}

/// Scaled complementary error function exp(x^2) erfc(x), x >= 0.
inline double erfcx(double x) {
  detail::require(x >= 0.0, "erfcx: x must be nonnegative");
  if (x < 4.0) return std::exp(x * x) * std::erfc(x);
  // erfcx(x) = 1 / (sqrt(pi) (x + (1/2) / (x + 1 / (x + (3/2) / (x + ...)))))
  constexpr double kTiny = 1e-300;
  double f = x;
  double c = x;
  double d = 0.0;
  for (int k = 1; k < 5000; ++k) {
    const double an = 0.5 * k;
    d = x + an * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = x + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = c * d;
    f *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return 1.0 / (std::sqrt(std::numbers::pi) * f);
}

/// Standard normal density.
inline double gauss_density(double h) {
  return std::exp(-0.5 * h * h - detail::kHalfLog2Pi);
}

/// Gaussian tail Q(h) = P(Z >= h) for a standard normal Z.
inline double gauss_tail(double h) {
  detail::require(!std::isnan(h), "gauss_tail: NaN argument");
  return 0.5 * std::erfc(h / std::numbers::sqrt2);
}

/// ln Q(h); finite far beyond the point where Q(h) underflows.
inline double log_gauss_tail(double h) {
  detail::require(!std::isnan(h), "log_gauss_tail: NaN argument");
  if (h < 0.0) return std::log1p(-gauss_tail(-h));
  if (h < 20.0) return std::log(gauss_tail(h));
  return -0.5 * h * h + std::log(0.5 * erfcx(h / std::numbers::sqrt2));
}

/// Inverse Gaussian tail: h with Q(h) = f, for f in (0, 1).
inline double inverse_gauss_tail(double f) {
  detail::require(f > 0.0 && f < 1.0, "inverse_gauss_tail: f must lie in (0, 1)");
  if (f == 0.5) return 0.0;
  if (f > 0.5) return -inverse_gauss_tail(1.0 - f);
  const double log_f = std::log(f);
  double lo = 0.0;
  double hi = 8.0;
  while (log_gauss_tail(hi) > log_f) {
    lo = hi;
    hi *= 2.0;
  }
  double h = std::sqrt(std::max(0.0, -2.0 * (log_f + detail::kHalfLog2Pi)));
  if (!(h > lo && h < hi)) h = 0.5 * (lo + hi);
  for (int i = 0; i < 200; ++i) {
    const double log_q = log_gauss_tail(h);
    const double g = log_q - log_f;
    if (g > 0.0) {
      lo = h;
    } else {
      hi = h;
    }
    if (std::abs(g) <= 2.0 * std::numeric_limits<double>::epsilon()) return h;
    // d/dh ln Q(h) = -phi(h) / Q(h)
    const double slope = -std::exp(-0.5 * h * h - detail::kHalfLog2Pi - log_q);
    double next = h - g / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == h) return h;
    h = next;
  }
  return h;
}

}  // namespace capcover
