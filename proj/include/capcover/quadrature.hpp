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

#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

#include "capcover/error.hpp"

namespace capcover {

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <typename F>
Segment kronrod15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[j] * sum;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * sum;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (G7/K15) quadrature of f over [a, b].
/// Splits the segment with the largest error estimate until the summed
/// estimate is below max(abs_tol, rel_tol * |value|).
template <typename F>
QuadratureResult integrate_gk(F&& f, double a, double b, double abs_tol, double rel_tol,
                              std::size_t max_segments = 2000) {
  detail::require(std::isfinite(a) && std::isfinite(b), "integrate_gk: finite limits required");
  QuadratureResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<detail::Segment> heap;
  heap.push(detail::kronrod15(f, a, b));
  out.evaluations = 15;
  double total = heap.top().value;
  double error = heap.top().error;
  while (true) {
    if (error <= std::max(abs_tol, rel_tol * std::abs(total))) {
      out.converged = true;
      break;
    }
    if (heap.size() >= max_segments) break;
    const detail::Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const auto left = detail::kronrod15(f, worst.a, mid);
    const auto right = detail::kronrod15(f, mid, worst.b);
    out.evaluations += 30;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Resum to shed the drift accumulated by the running updates.
  total = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  out.value = total;
  out.abs_error = error;
  return out;
}

namespace detail {

template <typename F>
double simpson_step(F& f, double a, double b, double fa, double fm, double fb, double whole,
                    double tol, int depth, std::size_t& evals) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  evals += 2;
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, evals) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, evals);
}

}  // namespace detail

/// Recursive adaptive Simpson quadrature with Richardson correction.
/// Independent of integrate_gk; used where two unrelated schemes are
/// cross-checked against each other.
template <typename F>
QuadratureResult integrate_simpson(F&& f, double a, double b, double abs_tol, int max_depth = 50,
                                   int panels = 16) {
  detail::require(std::isfinite(a) && std::isfinite(b), "integrate_simpson: finite limits required");
  detail::require(panels >= 1, "integrate_simpson: panels >= 1");
  QuadratureResult out;
  const double width = (b - a) / panels;
  double fa = f(a);
  ++out.evaluations;
  for (int k = 0; k < panels; ++k) {
    const double lo = a + k * width;
    const double hi = (k + 1 == panels) ? b : a + (k + 1) * width;
    const double fm = f(0.5 * (lo + hi));
    const double fb = f(hi);
    out.evaluations += 2;
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    out.value += detail::simpson_step(f, lo, hi, fa, fm, fb, whole, abs_tol / panels, max_depth,
                                      out.evaluations);
    fa = fb;
  }
  out.abs_error = abs_tol;
  out.converged = true;
  return out;
}

}  // namespace capcover
