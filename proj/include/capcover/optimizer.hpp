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

// Hill climbing over cap centers. Each restart fixes one set of evaluation
// points (common random numbers), so accept/reject decisions compare a
// deterministic surrogate; the winner is re-measured on fresh points.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "capcover/bounds.hpp"
#include "capcover/cap_geometry.hpp"
#include "capcover/coverage.hpp"
#include "capcover/error.hpp"
#include "capcover/gaussian_verify.hpp"
#include "capcover/parallel.hpp"
#include "capcover/sampling.hpp"

namespace capcover {

struct OptimizerConfig {
  int steps = 4000;
  int restarts = 4;
  double initial_step_angle = 0.5;
  double decay = 0.7;
  std::uint64_t crn_samples = 20000;
  std::uint64_t fresh_samples = 200000;
  RngSpec rng{};
  bool antipodal = false;

  void validate() const {
    detail::require(steps >= 1, "OptimizerConfig: steps must be >= 1");
    detail::require(restarts >= 1, "OptimizerConfig: restarts must be >= 1");
    detail::require(initial_step_angle > 0.0 && initial_step_angle < std::numbers::pi,
                    "OptimizerConfig: initial step angle must lie in (0, pi)");
    detail::require(decay > 0.0 && decay < 1.0, "OptimizerConfig: decay must lie in (0, 1)");
    detail::require(crn_samples >= 10000, "OptimizerConfig: crn_samples must be >= 1e4");
    detail::require(fresh_samples >= 100, "OptimizerConfig: fresh_samples must be >= 100");
  }
};

struct OptimizationTrace {
  int d = 0;
  int n_caps = 0;
  double alpha = 0.0;
  double best_coverage = 0.0;  // fresh-seed re-estimate
  double best_std_error = 0.0;
  double crn_objective = 0.0;  // final surrogate value of the winning restart
  double initial_objective = 0.0;
  std::vector<double> objective_history;
  Configuration final_config;
  double random_baseline = 0.0;
  std::optional<double> theorem_upper;   // absent when d < 5
  std::optional<double> exact_coverage;  // d = 2 only
  int best_restart = 0;
  std::uint64_t accepted_moves = 0;
};

/// Coverage fraction on a fixed point set.
inline double crn_objective(const Configuration& config, const PointSet& points) {
  detail::require(config.dim() == points.dim(), "crn_objective: dimension mismatch");
  detail::require(points.size() > 0, "crn_objective: empty point set");
  const detail::UnionTester tester(config);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < points.size(); ++i) hits += tester.covers(points[i].data()) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(points.size());
}

namespace detail {

struct RestartResult {
  std::vector<Cap> caps;
  double objective = 0.0;
  double initial = 0.0;
  std::vector<double> history;
  std::uint64_t accepted = 0;
};

// Membership of every evaluation point in one movable unit: a single cap,
// or an antipodal pair when `paired`.
inline void unit_membership(const PointSet& pts, std::span<const double> center, double cos_t,
                            bool full, bool paired, std::vector<std::uint8_t>& out) {
  const int d = pts.dim();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (full) {
      out[i] = 1;
      continue;
    }
    const double* p = pts[i].data();
    double s = 0.0;
    for (int j = 0; j < d; ++j) s += p[j] * center[j];
    out[i] = (s >= cos_t || (paired && -s >= cos_t)) ? 1 : 0;
  }
}

inline RestartResult run_restart(Dim d, int n_caps, double alpha, const OptimizerConfig& cfg,
                                 std::uint64_t restart) {
  const RngSpec stream = cfg.rng.substream(streams::kRestartBase + restart);
  const PointSet points = sample_uniform_sphere(d, stream, cfg.crn_samples);
  const double mass = alpha / n_caps;
  const int units = cfg.antipodal ? n_caps / 2 : n_caps;

  const PointSet init = sample_uniform_sphere(d, stream.substream(streams::kCenters), units);
  std::vector<Cap> caps;
  caps.reserve(units);
  for (int u = 0; u < units; ++u) caps.push_back(Cap::from_mass({init[u].begin(), init[u].end()}, mass));

  const std::size_t n_pts = points.size();
  std::vector<std::vector<std::uint8_t>> member(units, std::vector<std::uint8_t>(n_pts));
  std::vector<std::uint32_t> count(n_pts, 0);
  for (int u = 0; u < units; ++u) {
    unit_membership(points, caps[u].center(), caps[u].cos_threshold(), caps[u].is_full(),
                    cfg.antipodal, member[u]);
    for (std::size_t i = 0; i < n_pts; ++i) count[i] += member[u][i];
  }
  std::int64_t covered = 0;
  for (auto c : count) covered += c > 0 ? 1 : 0;

  RestartResult res;
  res.initial = static_cast<double>(covered) / n_pts;
  res.history.reserve(cfg.steps + 1);
  res.history.push_back(res.initial);

  std::mt19937_64 engine(stream.substream(0x57E9).master_seed);
  std::uniform_int_distribution<int> pick(0, units - 1);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::uint8_t> proposal(n_pts);
  std::vector<double> direction(d);
  std::vector<double> moved(d);

  const int window = std::max(1, cfg.steps / 10);
  int since_accept = 0;
  double step = cfg.initial_step_angle;

  for (int s = 0; s < cfg.steps; ++s) {
    const int u = pick(engine);
    const auto c = caps[u].center();
    // Random tangent direction at c.
    double proj = 0.0;
    for (int j = 0; j < d; ++j) {
      direction[j] = gauss(engine);
      proj += direction[j] * c[j];
    }
    double len = 0.0;
    for (int j = 0; j < d; ++j) {
      direction[j] -= proj * c[j];
      len += direction[j] * direction[j];
    }
    len = std::sqrt(len);
    bool accepted = false;
    if (len > 0.0 && !caps[u].is_full()) {
      double nrm = 0.0;
      for (int j = 0; j < d; ++j) {
        moved[j] = std::cos(step) * c[j] + std::sin(step) * direction[j] / len;
        nrm += moved[j] * moved[j];
      }
      nrm = std::sqrt(nrm);
      for (int j = 0; j < d; ++j) moved[j] /= nrm;

      unit_membership(points, moved, caps[u].cos_threshold(), false, cfg.antipodal, proposal);
      std::int64_t delta = 0;
      const auto& old = member[u];
      for (std::size_t i = 0; i < n_pts; ++i) {
        if (proposal[i] == old[i]) continue;
        if (proposal[i] && count[i] == 0) ++delta;
        if (old[i] && count[i] == 1) --delta;
      }
      if (delta > 0) {
        for (std::size_t i = 0; i < n_pts; ++i) count[i] += proposal[i] - old[i];
        member[u].swap(proposal);
        caps[u] = caps[u].moved_to(moved);
        covered += delta;
        ++res.accepted;
        accepted = true;
      }
    }
    if (accepted) {
      since_accept = 0;
    } else if (++since_accept >= window) {
      step *= cfg.decay;
      since_accept = 0;
    }
    res.history.push_back(static_cast<double>(covered) / n_pts);
  }
  res.objective = static_cast<double>(covered) / n_pts;
  if (cfg.antipodal) {
    std::vector<Cap> all;
    all.reserve(2 * caps.size());
    for (const auto& cap : caps) {
      all.push_back(cap);
      all.push_back(cap.mirrored());
    }
    res.caps = std::move(all);
  } else {
    res.caps = std::move(caps);
  }
  return res;
}

}  // namespace detail

/// Multi-restart hill climbing for the maximal union of N caps of mass alpha/N.
inline OptimizationTrace local_search(Dim d, int n_caps, double alpha, const OptimizerConfig& cfg) {
  cfg.validate();
  detail::require(n_caps >= 1, "local_search: N must be >= 1");
  detail::require(alpha > 0.0 && alpha <= 1.0, "local_search: alpha must lie in (0, 1]");
  detail::require(alpha / n_caps <= 1.0, "local_search: alpha/N must not exceed 1");
  if (cfg.antipodal) {
    detail::require(n_caps % 2 == 0, "local_search: antipodal search needs even N");
    detail::require(alpha / n_caps < mass_upper_limit(d),
                    "local_search: antipodal search needs alpha/N < mass_upper_limit(d)");
  }

  std::vector<detail::RestartResult> results(cfg.restarts);
  parallel_for(static_cast<std::size_t>(cfg.restarts), [&](std::size_t r) {
    results[r] = detail::run_restart(d, n_caps, alpha, cfg, r);
  });
  std::size_t best = 0;
  for (std::size_t r = 1; r < results.size(); ++r)
    if (results[r].objective > results[best].objective) best = r;

  auto& winner = results[best];
  Configuration config(d, std::move(winner.caps), cfg.antipodal, alpha);
  const auto fresh = mc_coverage(config, cfg.rng.substream(streams::kFresh), cfg.fresh_samples);

  OptimizationTrace trace{
      .d = d,
      .n_caps = n_caps,
      .alpha = alpha,
      .best_coverage = fresh.mean,
      .best_std_error = fresh.std_error,
      .crn_objective = winner.objective,
      .initial_objective = winner.initial,
      .objective_history = std::move(winner.history),
      .final_config = std::move(config),
      .random_baseline = expected_random_coverage(n_caps, alpha),
      .theorem_upper = std::nullopt,
      .exact_coverage = std::nullopt,
      .best_restart = static_cast<int>(best),
      .accepted_moves = winner.accepted,
  };
  if (d >= 5 && alpha / n_caps < 1.0)
    trace.theorem_upper = theorem_bounds({d, static_cast<double>(n_caps), alpha}).upper;
  if (d == 2) trace.exact_coverage = exact_coverage_circle(trace.final_config);
  return trace;
}

/// Checks an optimization result against the random baseline and, where
/// applicable and informative, the theorem's upper bound.
inline VerificationReport compare_to_bounds(const OptimizationTrace& trace,
                                            const TheoremInputs& inputs) {
  const double slack = 4.0 * trace.best_std_error;
  const bool above_baseline = trace.best_coverage >= trace.random_baseline - slack;
  std::ostringstream os;
  os << "best=" << trace.best_coverage << " se=" << trace.best_std_error
     << " baseline=" << trace.random_baseline;

  bool below_upper = true;
  double upper = 1.0;
  if (inputs.d < 5) {
    os << "; upper bound not applicable (d < 5)";
  } else {
    const auto report = theorem_bounds(inputs);
    upper = report.upper;
    if (!report.precondition_met) {
      os << "; upper bound precondition unmet (N < " << report.threshold_n << ")";
    } else if (upper >= 1.0) {
      os << "; bound vacuous (upper=" << upper << ")";
    } else {
      below_upper = trace.best_coverage <= upper + slack;
      os << "; upper=" << upper;
    }
  }
  VerificationReport rep{"optimizer_vs_bounds", above_baseline && below_upper,
                         trace.best_coverage,  upper,
                         slack,                os.str(),
                         CheckKind::kInequality};
  return rep;
}

}  // namespace capcover
