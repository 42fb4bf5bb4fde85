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

// capcover command-line tool.
//
//   capcover caps     --dim D (--mass M | --radius R)
//   capcover simulate --dim 5,10 --ncaps 1000 --alpha 0.5,1 [--configs K --samples S]
//   capcover bounds   --dim 5,100 --ncaps 1e6 --alpha 1
//   capcover verify   --suite {all,zone,cone,sidak,scalar,conemass}
//   capcover optimize --dim D --ncaps N --alpha A [optimizer flags]
//
// Exit codes: 0 ok, 1 verification failure, 2 usage or domain error,
// 3 statistical self-check failure.

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "capcover/capcover.hpp"
#include "capcover/io.hpp"

using namespace capcover;

namespace {

struct ExperimentConfig {
  std::vector<int> dims;
  std::vector<double> ns;
  std::vector<double> alphas{1.0};
  std::uint64_t seed = 1;
  std::uint64_t samples = 20000;
  int configs = 20;
  std::string out;
  std::string format = "text";
  std::string suite = "all";
  std::optional<double> mass;
  std::optional<double> radius;
  unsigned threads = 0;
  bool self_check = false;
  // optimizer
  int steps = 4000;
  int restarts = 4;
  double step_angle = 0.5;
  double decay = 0.7;
  std::uint64_t crn_samples = 20000;
  std::uint64_t fresh_samples = 200000;
  bool antipodal = false;
};

Json params_json(const std::string& command, const ExperimentConfig& c) {
  Json p;
  p["command"] = command;
  p["dims"] = c.dims;
  p["ns"] = c.ns;
  p["alphas"] = c.alphas;
  p["seed"] = c.seed;
  if (command == "simulate") {
    p["samples"] = c.samples;
    p["configs"] = c.configs;
    p["selfCheck"] = c.self_check;
  }
  if (command == "verify") p["suite"] = c.suite;
  if (command == "caps") {
    p["mass"] = c.mass ? Json(*c.mass) : Json(nullptr);
    p["radius"] = c.radius ? Json(*c.radius) : Json(nullptr);
  }
  if (command == "optimize") {
    p["steps"] = c.steps;
    p["restarts"] = c.restarts;
    p["stepAngle"] = c.step_angle;
    p["decay"] = c.decay;
    p["crnSamples"] = c.crn_samples;
    p["freshSamples"] = c.fresh_samples;
    p["antipodal"] = c.antipodal;
  }
  return p;
}

// Shortest round-trip representation.
std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

class Output {
 public:
  Output(std::string command, const ExperimentConfig& cfg)
      : command_(std::move(command)), cfg_(cfg), start_(std::chrono::steady_clock::now()) {}

  std::ostream& text() { return cfg_.out.empty() ? std::cout : buffer_; }

  void record(Json r) { records_.push_back(std::move(r)); }

  void csv_row(const std::vector<std::string>& header, const std::vector<std::string>& row) {
    if (csv_header_.empty()) csv_header_ = header;
    csv_rows_.push_back(row);
  }

  void finish() {
    std::ostringstream doc;
    if (cfg_.format == "json") {
      Json j;
      j["tool"] = "capcover";
      j["version"] = kVersion;
      j["params"] = params_json(command_, cfg_);
      j["seed"] = cfg_.seed;
      j["records"] = records_;
      doc << j.dump(2) << '\n';
    } else if (cfg_.format == "csv") {
      doc << "# capcover " << kVersion << ' ' << params_json(command_, cfg_).dump() << '\n';
      for (std::size_t i = 0; i < csv_header_.size(); ++i) doc << (i ? "," : "") << csv_header_[i];
      doc << '\n';
      for (const auto& row : csv_rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) doc << (i ? "," : "") << row[i];
        doc << '\n';
      }
    } else {
      doc << buffer_.str();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    if (cfg_.out.empty()) {
      std::cout << doc.str();
      std::cerr << "wall-clock: " << secs << " s\n";
      return;
    }
    std::ofstream f(cfg_.out, std::ios::binary);
    if (!f) throw DomainError("cannot open output file " + cfg_.out);
    f << doc.str();
    // Timing lives next to the payload so the payload stays reproducible.
    std::ofstream t(cfg_.out + ".wallclock.json");
    Json tj;
    tj["version"] = kVersion;
    tj["output"] = cfg_.out;
    tj["wallClockSeconds"] = secs;
    tj["finishedAt"] = std::chrono::duration_cast<std::chrono::seconds>(
                           std::chrono::system_clock::now().time_since_epoch())
                           .count();
    t << tj.dump(2) << '\n';
    if (cfg_.format != "text") std::cout << buffer_.str();
    std::cerr << "wrote " << cfg_.out << " (" << secs << " s)\n";
  }

 private:
  std::string command_;
  const ExperimentConfig& cfg_;
  std::chrono::steady_clock::time_point start_;
  std::ostringstream buffer_;
  Json records_ = Json::array();
  std::vector<std::string> csv_header_;
  std::vector<std::vector<std::string>> csv_rows_;
};

// ---- caps -------------------------------------------------------------

int cmd_caps(const ExperimentConfig& c) {
  if (c.mass.has_value() == c.radius.has_value())
    throw DomainError("caps: give exactly one of --mass or --radius");
  if (c.dims.empty()) throw DomainError("caps: --dim is required");
  Output out("caps", c);
  for (int dv : c.dims) {
    const Dim d(dv);
    double mass = 0.0;
    double radius = 0.0;
    bool ok = false;
    if (c.mass) {
      mass = *c.mass;
      radius = radius_from_mass(d, mass);
      const double back = cap_mass_from_radius(d, radius);
      ok = std::abs(back - mass) <= 1e-10 * mass;
    } else {
      radius = *c.radius;
      mass = cap_mass_from_radius(d, radius);
      const double back = radius_from_mass(d, mass);
      ok = std::abs(back - radius) <= 1e-10 * radius;
    }
    std::vector<double> center(d, 0.0);
    center[0] = 1.0;
    const Cap cap = Cap::from_radius(center, radius);
    // the offset is defined for f < 1/2 only
    const double h = mass < 0.5 ? gaussian_halfspace_offset(mass) : std::nan("");
    const std::string h_text = mass < 0.5 ? num(h) : "n/a";
    const double eta = eta_bound(mass);
    out.text() << "d=" << d.value() << " mass=" << num(mass) << " radius=" << num(radius)
               << " cos=" << num(cap.cos_threshold()) << " h=" << h_text
               << " eta=" << num(eta) << " roundtrip=" << (ok ? "ok" : "FAILED") << '\n';
    out.record({{"d", d.value()},
                {"mass", mass},
                {"radius", radius},
                {"cosThreshold", cap.cos_threshold()},
                {"offset", mass < 0.5 ? Json(h) : Json(nullptr)},
                {"eta", eta},
                {"roundtrip", ok}});
    out.csv_row({"d", "mass", "radius", "cos", "h", "eta", "roundtrip"},
                {std::to_string(d.value()), num(mass), num(radius), num(cap.cos_threshold()),
                 mass < 0.5 ? h_text : "", num(eta), ok ? "ok" : "failed"});
    if (!ok) {
      out.finish();
      return 1;
    }
  }
  out.finish();
  return 0;
}

// ---- simulate ---------------------------------------------------------

int cmd_simulate(const ExperimentConfig& c) {
  if (c.dims.empty() || c.ns.empty() || c.alphas.empty())
    throw DomainError("simulate: --dim, --ncaps and --alpha are required");
  for (double n : c.ns)
    if (n < 1 || n != std::floor(n) || n > 1e9) throw DomainError("simulate: N must be an integer in [1, 1e9]");
  for (int d : c.dims) Dim{d};
  for (double a : c.alphas)
    if (!(a > 0.0 && a <= 1.0)) throw DomainError("simulate: alpha must lie in (0, 1]");
  Output out("simulate", c);
  bool self_check_failed = false;
  out.text() << "     d           N   alpha  configs  samples        mean     stdError    expected       z\n";
  for (int dv : c.dims)
    for (double nv : c.ns)
      for (double alpha : c.alphas) {
        const int n = static_cast<int>(nv);
        const RngSpec rng{c.seed};
        const auto est = mean_coverage_over_configs(Dim(dv), n, alpha, rng, c.configs, c.samples);
        const double expect = expected_random_coverage(n, alpha);
        const double diff = est.mean - expect;
        const double z = diff == 0.0 ? 0.0 : diff / est.std_error;
        if (std::abs(z) > 6.0) self_check_failed = true;
        char line[256];
        std::snprintf(line, sizeof line, "%6d %11d %7g %8d %8llu %11.6f %12.3e %11.6f %7.2f\n", dv,
                      n, alpha, c.configs, static_cast<unsigned long long>(c.samples), est.mean,
                      est.std_error, expect, z);
        out.text() << line;
        out.record({{"d", dv},
                    {"N", n},
                    {"alpha", alpha},
                    {"nConfigs", c.configs},
                    {"nSamples", c.samples},
                    {"seed", c.seed},
                    {"mean", est.mean},
                    {"stdError", est.std_error},
                    {"expected", expect},
                    {"z", z}});
        out.csv_row({"d", "N", "alpha", "nConfigs", "nSamples", "seed", "mean", "stdError",
                     "expected", "z"},
                    {std::to_string(dv), std::to_string(n), num(alpha), std::to_string(c.configs),
                     std::to_string(c.samples), std::to_string(c.seed), num(est.mean),
                     num(est.std_error), num(expect), num(z)});
      }
  out.finish();
  if (c.self_check && self_check_failed) {
    std::cerr << "self-check failed: a row deviates by more than 6 SE\n";
    return 3;
  }
  return 0;
}

// ---- bounds -----------------------------------------------------------

int cmd_bounds(const ExperimentConfig& c) {
  if (c.dims.empty() || c.ns.empty() || c.alphas.empty())
    throw DomainError("bounds: --dim, --ncaps and --alpha are required");
  Output out("bounds", c);
  out.text() << "     d            N  alpha        lower        upper     coneTerm       alphaN"
                "   thresholdN  note\n";
  for (int dv : c.dims)
    for (double n : c.ns)
      for (double alpha : c.alphas) {
        char line[256];
        if (dv < 5 || !(alpha / n < 1.0)) {
          std::snprintf(line, sizeof line, "%6d %12g %6g  precondition unmet (needs d >= 5, alpha/N < 1)\n",
                        dv, n, alpha);
          out.text() << line;
          out.record({{"d", dv}, {"N", n}, {"alpha", alpha}, {"preconditionMet", false}});
          continue;
        }
        const auto r = theorem_bounds({dv, n, alpha});
        std::snprintf(line, sizeof line, "%6d %12g %6g %12.8f %12.6f %12.6f %12.4e %12.5g  %s\n", dv, n,
                      alpha, r.lower, r.upper, r.cone_term, r.alpha_n, r.threshold_n,
                      r.precondition_met ? "" : "precondition unmet (N < threshold)");
        out.text() << line;
        out.record(to_json(r));
        out.csv_row({"d", "N", "alpha", "base", "betaN", "alphaN", "coneTerm", "zoneTerm",
                     "thresholdN", "lower", "upper", "preconditionMet"},
                    {std::to_string(dv), num(n), num(alpha), num(r.base), num(r.beta_n),
                     num(r.alpha_n), num(r.cone_term), num(r.zone_term), num(r.threshold_n),
                     num(r.lower), num(r.upper), r.precondition_met ? "true" : "false"});
      }
  bool any_alpha_one = false;
  for (double a : c.alphas) any_alpha_one |= a == 1.0;
  std::vector<int> big;
  for (int d : c.dims)
    if (d >= 5) big.push_back(d);
  if (any_alpha_one && !big.empty()) {
    out.text() << "\nalpha = 1, N = infinity (efr reference " << num(efr_reference()) << ")\n";
    out.text() << "     d        lower        upper  e in [lo, hi]\n";
    for (const auto& b : euler_report(big)) {
      char line[256];
      std::snprintf(line, sizeof line, "%6d %12.8f %12.8f  [%.9f, %s]\n", b.d, b.coverage_lower,
                    b.coverage_upper, b.e_lower,
                    std::isfinite(b.e_upper) ? num(b.e_upper).c_str() : "inf (vacuous)");
      out.text() << line;
      Json j = to_json(b);
      j["efrReference"] = efr_reference();
      out.record(std::move(j));
    }
  }
  const auto ldiv = ldiv_upper_constant();
  char footer[160];
  std::snprintf(footer, sizeof footer, "\nldiv constant = %.12f (abs error <= %.1e)\n", ldiv.value,
                ldiv.abs_error);
  out.text() << footer;
  Json lj = to_json(ldiv);
  lj["name"] = "ldiv";
  out.record(std::move(lj));
  out.finish();
  return 0;
}

// ---- verify -----------------------------------------------------------

std::vector<VerificationReport> suite_zone() {
  std::vector<VerificationReport> out;
  for (int d : {5, 6, 7}) {
    const double t = threshold_n(Dim(d));
    for (double n : {std::ceil(t), 10.0 * t, 1e6}) {
      const double q = zone_quadrature(Dim(d), n);
      const auto z = zone_bound(Dim(d), n);
      std::ostringstream os;
      os << "d=" << d << " N=" << n << " quad=" << num(q) << " full=" << num(z.full)
         << " simplified=" << num(z.simplified);
      out.push_back(make_report("zone_chain", CheckKind::kInequality, q, z.full, 0.0, os.str()));
      out.back().passed = q <= z.full && z.full <= z.simplified;
    }
  }
  return out;
}

std::vector<VerificationReport> suite_cone() {
  std::vector<VerificationReport> out;
  for (int d : {5, 10, 20, 50, 100})
    for (double f : {1e-12, 1e-9, 1e-6, mass_upper_limit(Dim(d)) / 2}) {
      const double m = truncated_cone_measure(make_cone_geometry(Dim(d), f));
      std::ostringstream os;
      os << "d=" << d << " f=" << f;
      out.push_back(make_report("truncated_cone", CheckKind::kInequality, m,
                                truncated_cone_bound(Dim(d), f), 0.0, os.str()));
    }
  return out;
}

std::vector<VerificationReport> suite_sidak(std::uint64_t seed) {
  std::vector<VerificationReport> out;
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<int> pick_d(2, 10);
  std::uniform_int_distribution<int> pick_m(1, 8);
  std::uniform_real_distribution<double> pick_w(0.1, 2.0);
  std::normal_distribution<double> g;
  for (int k = 0; k < 50; ++k) {
    const int d = pick_d(gen);
    const int m = pick_m(gen);
    std::vector<Slab> slabs;
    for (int i = 0; i < m; ++i) {
      std::vector<double> u(d);
      for (auto& x : u) x = g(gen);
      const double len = norm(u);
      for (auto& x : u) x /= len;
      slabs.push_back({std::move(u), pick_w(gen)});
    }
    out.push_back(sidak_mc(slabs, RngSpec{seed}.substream(k), 100000));
  }
  return out;
}

std::vector<VerificationReport> suite_conemass(std::uint64_t seed) {
  std::vector<VerificationReport> out;
  int k = 0;
  for (int d : {3, 10, 50})
    for (double m : {0.001, 0.1, 0.5}) {
      std::vector<double> c(d, 0.0);
      c[d - 1] = 1.0;
      out.push_back(cone_measure_identity_mc(Cap::from_mass(c, m), RngSpec{seed}.substream(k++), 200000));
    }
  return out;
}

int cmd_verify(const ExperimentConfig& c) {
  const std::string& s = c.suite;
  const bool all = s == "all";
  if (!all && s != "zone" && s != "cone" && s != "sidak" && s != "scalar" && s != "conemass")
    throw DomainError("verify: unknown suite " + s);
  Output out("verify", c);
  std::vector<VerificationReport> reports;
  auto add = [&](std::vector<VerificationReport> r) {
    for (auto& x : r) reports.push_back(std::move(x));
  };
  if (all || s == "zone") add(suite_zone());
  if (all || s == "cone") add(suite_cone());
  if (all || s == "sidak") add(suite_sidak(c.seed));
  if (all || s == "scalar") add(scalar_inequalities());
  if (all || s == "conemass") add(suite_conemass(c.seed));
  std::size_t failed = 0;
  for (const auto& r : reports) {
    failed += r.passed ? 0 : 1;
    out.text() << (r.passed ? "PASS " : "FAIL ") << r.name << "  " << r.detail << '\n';
    out.record(to_json(r));
    out.csv_row({"name", "passed", "lhs", "rhs", "tolerance", "kind", "detail"},
                {r.name, r.passed ? "true" : "false", num(r.lhs), num(r.rhs), num(r.tolerance),
                 r.kind == CheckKind::kIdentity ? "identity" : "inequality",
                 "\"" + r.detail + "\""});
  }
  out.text() << reports.size() - failed << "/" << reports.size() << " checks passed\n";
  out.finish();
  return failed == 0 ? 0 : 1;
}

// ---- optimize ---------------------------------------------------------

int cmd_optimize(const ExperimentConfig& c) {
  if (c.dims.size() != 1 || c.ns.size() != 1 || c.alphas.size() != 1)
    throw DomainError("optimize: give a single --dim, --ncaps and --alpha");
  const double nv = c.ns.front();
  if (nv < 1 || nv != std::floor(nv) || nv > 1e6) throw DomainError("optimize: N must be an integer in [1, 1e6]");
  OptimizerConfig oc;
  oc.steps = c.steps;
  oc.restarts = c.restarts;
  oc.initial_step_angle = c.step_angle;
  oc.decay = c.decay;
  oc.crn_samples = c.crn_samples;
  oc.fresh_samples = c.fresh_samples;
  oc.rng = RngSpec{c.seed};
  oc.antipodal = c.antipodal;
  const int n = static_cast<int>(nv);
  const int d = c.dims.front();
  const double alpha = c.alphas.front();
  Output out("optimize", c);
  const auto trace = local_search(Dim(d), n, alpha, oc);

  std::ostringstream line;
  line << "best=" << num(trace.best_coverage) << " se=" << num(trace.best_std_error)
       << " crn=" << num(trace.crn_objective) << " baseline=" << num(trace.random_baseline);
  if (trace.exact_coverage) line << " exact=" << num(*trace.exact_coverage);
  if (!trace.theorem_upper) {
    line << " upper=not applicable";
  } else if (*trace.theorem_upper >= 1.0) {
    line << " upper=vacuous (" << num(*trace.theorem_upper) << ")";
  } else {
    line << " upper=" << num(*trace.theorem_upper);
  }
  out.text() << line.str() << '\n';
  out.record(to_json(trace));
  out.csv_row({"d", "N", "alpha", "best", "stdError", "crn", "baseline", "upper"},
              {std::to_string(d), std::to_string(n), num(alpha), num(trace.best_coverage),
               num(trace.best_std_error), num(trace.crn_objective), num(trace.random_baseline),
               trace.theorem_upper ? num(*trace.theorem_upper) : "not applicable"});
  out.finish();
  if (!c.out.empty() || c.format != "text") std::cerr << line.str() << '\n';
  return 0;
}

// ---- config file ------------------------------------------------------

template <typename T>
void override_from(const Json& j, const char* key, T& field, CLI::App* sub, const char* flag) {
  if (!j.contains(key)) return;
  if (sub) {
    const CLI::Option* opt = nullptr;
    try {
      opt = sub->get_option(flag);
    } catch (const CLI::OptionNotFound&) {
    }
    if (opt && opt->count() > 0)
      std::cerr << "warning: config file value for '" << key << "' overrides " << flag << '\n';
  }
  field = j.at(key).get<T>();
}

void apply_config_file(const std::string& path, ExperimentConfig& c, CLI::App* sub) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot read config file " + path);
  Json j;
  try {
    j = Json::parse(f);
    override_from(j, "dims", c.dims, sub, "--dim");
    override_from(j, "ns", c.ns, sub, "--ncaps");
    override_from(j, "alphas", c.alphas, sub, "--alpha");
    override_from(j, "seed", c.seed, sub, "--seed");
    override_from(j, "samples", c.samples, sub, "--samples");
    override_from(j, "configs", c.configs, sub, "--configs");
    override_from(j, "out", c.out, sub, "--out");
    override_from(j, "format", c.format, sub, "--format");
    override_from(j, "suite", c.suite, sub, "--suite");
    override_from(j, "steps", c.steps, sub, "--steps");
    override_from(j, "restarts", c.restarts, sub, "--restarts");
    override_from(j, "stepAngle", c.step_angle, sub, "--step-angle");
    override_from(j, "decay", c.decay, sub, "--decay");
    override_from(j, "crnSamples", c.crn_samples, sub, "--crn-samples");
    override_from(j, "freshSamples", c.fresh_samples, sub, "--fresh-samples");
    override_from(j, "antipodal", c.antipodal, sub, "--antipodal");
    override_from(j, "threads", c.threads, sub, "--threads");
    if (j.contains("mass")) c.mass = j.at("mass").get<double>();
    if (j.contains("radius")) c.radius = j.at("radius").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("config file " + path + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial coverings of the sphere by equal caps"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  ExperimentConfig cfg;
  std::string config_file;
  std::optional<double> mass;
  std::optional<double> radius;

  auto common = [&](CLI::App* s) {
    s->add_option("-d,--dim", cfg.dims, "Dimension(s) d (comma separated)")->delimiter(',');
    s->add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
    s->add_option("--out", cfg.out, "Output file");
    s->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"text", "csv", "json"}))
        ->capture_default_str();
    s->add_option("--threads", cfg.threads, "Worker threads (0 = hardware)");
    s->add_option("--config", config_file, "JSON config file; its values override flags");
  };
  auto grid = [&](CLI::App* s) {
    s->add_option("-n,--ncaps", cfg.ns, "Number of caps N (comma separated)")->delimiter(',');
    s->add_option("-a,--alpha", cfg.alphas, "Total mass alpha (comma separated)")
        ->delimiter(',')
        ->capture_default_str();
  };

  auto* caps = app.add_subcommand("caps", "Cap mass / radius conversions");
  common(caps);
  auto* mass_opt = caps->add_option("--mass", mass, "Normalized cap mass");
  caps->add_option("--radius", radius, "Geodesic radius")->excludes(mass_opt);

  auto* simulate = app.add_subcommand("simulate", "Random covering sweep");
  common(simulate);
  grid(simulate);
  simulate->add_option("--samples", cfg.samples, "Monte Carlo points per configuration")->capture_default_str();
  simulate->add_option("--configs", cfg.configs, "Random configurations per row")->capture_default_str();
  simulate->add_flag("--self-check", cfg.self_check, "Exit 3 if any row deviates by more than 6 SE");

  auto* bounds = app.add_subcommand("bounds", "Bound table");
  common(bounds);
  grid(bounds);

  auto* verify = app.add_subcommand("verify", "Numerical verification suites");
  common(verify);
  verify->add_option("--suite", cfg.suite, "Suite")
      ->check(CLI::IsMember({"all", "zone", "cone", "sidak", "scalar", "conemass"}))
      ->capture_default_str();

  auto* optimize = app.add_subcommand("optimize", "Local search for a large union");
  common(optimize);
  grid(optimize);
  optimize->add_option("--steps", cfg.steps, "Proposals per restart")->capture_default_str();
  optimize->add_option("--restarts", cfg.restarts, "Independent restarts")->capture_default_str();
  optimize->add_option("--step-angle", cfg.step_angle, "Initial step angle")->capture_default_str();
  optimize->add_option("--decay", cfg.decay, "Step decay factor")->capture_default_str();
  optimize->add_option("--crn-samples", cfg.crn_samples, "Fixed evaluation points")->capture_default_str();
  optimize->add_option("--fresh-samples", cfg.fresh_samples, "Points for the final estimate")->capture_default_str();
  optimize->add_flag("--antipodal", cfg.antipodal, "Move caps in antipodal pairs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    cfg.mass = mass;
    cfg.radius = radius;
    CLI::App* sub = app.get_subcommands().front();
    if (!config_file.empty()) apply_config_file(config_file, cfg, sub);
    if (cfg.threads > 0) set_worker_count(cfg.threads);
    const std::string name = sub->get_name();
    if (name == "caps") return cmd_caps(cfg);
    if (name == "simulate") return cmd_simulate(cfg);
    if (name == "bounds") return cmd_bounds(cfg);
    if (name == "verify") return cmd_verify(cfg);
    if (name == "optimize") return cmd_optimize(cfg);
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
