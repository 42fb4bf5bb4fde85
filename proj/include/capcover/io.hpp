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

// JSON encodings for configurations, estimates, reports and traces.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "capcover/bounds.hpp"
#include "capcover/coverage.hpp"
#include "capcover/error.hpp"
#include "capcover/gaussian_verify.hpp"
#include "capcover/optimizer.hpp"
#include "capcover/sampling.hpp"

namespace capcover {

using Json = nlohmann::ordered_json;

/// {"d", "alpha" (float or null), "antipodal", "caps": [{"center", "mass"}]}.
inline Json to_json(const Configuration& config) {
  Json caps = Json::array();
  for (const auto& cap : config.caps()) {
    caps.push_back({{"center", std::vector<double>(cap.center().begin(), cap.center().end())},
                    {"mass", cap.mass()}});
  }
  Json j;
  j["d"] = config.dim().value();
  j["alpha"] = config.alpha() ? Json(*config.alpha()) : Json(nullptr);
  j["antipodal"] = config.antipodal();
  j["caps"] = std::move(caps);
  return j;
}

inline Configuration configuration_from_json(const Json& j) {
  try {
    const Dim d(j.at("d").get<int>());
    std::optional<double> alpha;
    if (j.contains("alpha") && !j.at("alpha").is_null()) alpha = j.at("alpha").get<double>();
    const bool antipodal = j.value("antipodal", false);
    std::vector<Cap> caps;
    for (const auto& c : j.at("caps")) {
      auto center = c.at("center").get<std::vector<double>>();
      detail::require(static_cast<int>(center.size()) == d,
                      "configuration JSON: center length must equal d");
      caps.push_back(Cap::from_mass(std::move(center), c.at("mass").get<double>()));
    }
    return {d, std::move(caps), antipodal, alpha};
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("configuration JSON: ") + e.what());
  }
}

inline Json to_json(const CoverageEstimate& e) {
  return {{"mean", e.mean},
          {"stdError", e.std_error},
          {"nSamples", e.n_samples},
          {"seed", e.rng.master_seed},
          {"nConfigs", e.n_configs}};
}

inline Json to_json(const BoundReport& r) {
  return {{"d", r.inputs.d},
          {"N", r.inputs.n},
          {"alpha", r.inputs.alpha},
          {"base", r.base},
          {"betaN", r.beta_n},
          {"alphaN", r.alpha_n},
          {"coneTerm", r.cone_term},
          {"zoneTerm", r.zone_term},
          {"thresholdN", r.threshold_n},
          {"lower", r.lower},
          {"upper", r.upper},
          {"preconditionMet", r.precondition_met}};
}

inline Json to_json(const EulerBracket& b) {
  return {{"d", b.d},
          {"coverageLower", b.coverage_lower},
          {"coverageUpper", b.coverage_upper},
          {"eLower", b.e_lower},
          {"eUpper", std::isfinite(b.e_upper) ? Json(b.e_upper) : Json(nullptr)}};
}

inline Json to_json(const LdivConstant& c) {
  return {{"value", c.value},
          {"bracket", c.bracket},
          {"firstIntegral", c.first_integral},
          {"secondIntegral", c.second_integral},
          {"truncation", c.truncation},
          {"remainderBound", c.remainder_bound},
          {"absError", c.abs_error}};
}

inline Json to_json(const VerificationReport& r) {
  return {{"name", r.name},
          {"passed", r.passed},
          {"lhs", r.lhs},
          {"rhs", r.rhs},
          {"tolerance", r.tolerance},
          {"kind", r.kind == CheckKind::kIdentity ? "identity" : "inequality"},
          {"detail", r.detail}};
}

/// Evenly spaced subsample of at most max_points entries that keeps the
/// first and last values.
inline std::vector<double> downsample(const std::vector<double>& v, std::size_t max_points) {
  if (v.size() <= max_points || max_points < 2) return v;
  std::vector<double> out;
  out.reserve(max_points);
  for (std::size_t k = 0; k < max_points; ++k) {
    const std::size_t idx = k * (v.size() - 1) / (max_points - 1);
    out.push_back(v[idx]);
  }
  return out;
}

inline Json to_json(const OptimizationTrace& t) {
  Json j;
  j["d"] = t.d;
  j["N"] = t.n_caps;
  j["alpha"] = t.alpha;
  j["bestCoverage"] = t.best_coverage;
  j["bestStdError"] = t.best_std_error;
  j["crnObjective"] = t.crn_objective;
  j["initialObjective"] = t.initial_objective;
  j["randomBaseline"] = t.random_baseline;
  j["theoremUpper"] = t.theorem_upper ? Json(*t.theorem_upper) : Json("not applicable");
  j["exactCoverage"] = t.exact_coverage ? Json(*t.exact_coverage) : Json(nullptr);
  j["bestRestart"] = t.best_restart;
  j["acceptedMoves"] = t.accepted_moves;
  j["historyLength"] = t.objective_history.size();
  j["objectiveHistory"] = downsample(t.objective_history, 1000);
  j["finalConfig"] = to_json(t.final_config);
  return j;
}

}  // namespace capcover
