/*
 * Copyright 2026 The GES Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <algorithm>
#include <cmath>
#include <limits>

#include "ges/commands.hpp"
#include "ges/errors.hpp"
#include "ges/parallel.hpp"
#include "ges/random.hpp"
#include "ges/registry.hpp"
#include "ges/systems.hpp"

namespace ges {
namespace {

struct Check {
  std::string name;
  std::string system;
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
  std::string note;
};

class Report {
 public:
  void add(std::string name, std::string system, double value, double bound, std::string note = {}) {
    const bool pass = value <= bound;
    checks_.push_back({std::move(name), std::move(system), value, bound, pass, std::move(note)});
  }
  void flag(std::string name, std::string system, bool pass, std::string note) {
    checks_.push_back({std::move(name), std::move(system), pass ? 0.0 : 1.0, 0.0, pass,
                       std::move(note)});
  }
  std::size_t violations() const {
    return static_cast<std::size_t>(
        std::count_if(checks_.begin(), checks_.end(), [](const Check& c) { return !c.pass; }));
  }
  Json checks_json() const {
    Json out = Json::array();
    for (const auto& c : checks_) {
      Json j{{"name", c.name},
             {"system", c.system},
             {"value", std::isfinite(c.value) ? Json(c.value) : Json(format_double(c.value))},
             {"bound", c.bound},
             {"pass", c.pass}};
      if (!c.note.empty()) j["note"] = c.note;
      out.push_back(std::move(j));
    }
    return out;
  }

 private:
  std::vector<Check> checks_;
};

struct VerifyParams {
  std::uint64_t seed = 0;
  std::string only;
  std::size_t draws = 100;
  std::size_t nse_draws = 10;
};

bool wanted(const VerifyParams& p, const std::string& id) { return p.only.empty() || p.only == id; }

/// Forced Galerkin configuration used by the suites: one steady and one
/// oscillating mode.
Json forced_nse_config() {
  return Json::parse(R"({"forcing": {"modes": [
      {"k": [1, 0, 0], "amp": [1, 0], "time": {"kind": "const"}},
      {"k": [0, 1, 1], "amp": [0.5, 0.5], "time": {"kind": "sin", "omega": 1, "phase": 0}}]}})");
}

std::unique_ptr<TrajectoryFamily> suite_system(const std::string& id) {
  return make_system(id, id == "nse" ? forced_nse_config() : Json::object());
}

void suite_metrics(const VerifyParams& p, Report& rep) {
  for (const std::string id : {"single", "bump", "heat", "line", "branch2", "nse"}) {
    if (!wanted(p, id)) continue;
    const auto fam = suite_system(id);
    const auto& sp = fam->space();
    const auto xs = fam->sample_phase_space(0.0, -1.0, 12, p.seed);
    for (MetricKind m : {MetricKind::kStrong, MetricKind::kWeak}) {
      const std::string tag = std::string(to_string(m));
      double ident = 0.0, asym = 0.0, tri = 0.0, neg = 0.0;
      for (const auto& x : xs) {
        ident = std::max(ident, std::abs(sp.dist(m, x, x)));
        for (const auto& y : xs) {
          const double dxy = sp.dist(m, x, y);
          neg = std::max(neg, -dxy);
          asym = std::max(asym, std::abs(dxy - sp.dist(m, y, x)));
          for (const auto& z : xs) {
            tri = std::max(tri, sp.dist(m, x, z) - dxy - sp.dist(m, y, z));
          }
        }
      }
      rep.add(tag + ".identity", id, ident, 0.0);
      rep.add(tag + ".non_negative", id, neg, 0.0);
      rep.add(tag + ".symmetry", id, asym, 1e-12);
      rep.add(tag + ".triangle_excess", id, tri, 1e-12);

      const double eps = 0.25;
      const auto net = epsilon_net(sp, xs, eps, m);
      rep.add(tag + ".net_cover", id, set_semidist(sp, xs, net, m), eps);
      double sep = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < net.size(); ++i) {
        for (std::size_t j = i + 1; j < net.size(); ++j) sep = std::min(sep, sp.dist(m, net[i], net[j]));
      }
      rep.add(tag + ".net_separation_deficit", id, net.size() < 2 ? 0.0 : eps - sep, 0.0);
      const std::span<const CoeffState> all(xs);
      const auto a = all.subspan(0, 6), b = all.subspan(6);
      rep.add(tag + ".hausdorff_symmetry", id,
              std::abs(hausdorff_dist(sp, a, b, m) - hausdorff_dist(sp, b, a, m)), 0.0);
    }
    rep.add("weak.tail_bound_finite", id, std::isfinite(sp.tail_bound()) ? 0.0 : 1.0, 0.0);
  }
}

double compose_max(const TrajectoryFamily& fam, std::size_t draws, std::uint64_t seed,
                   double lo) {
  std::vector<double> err(draws);
  for (std::size_t i = 0; i < draws; ++i) {
    SplitMix64 rng(mix_seed(seed, i));
    std::array<double, 3> ts{rng.uniform(lo, 0.0), rng.uniform(lo, 0.0), rng.uniform(lo, 0.0)};
    std::sort(ts.begin(), ts.end());
    const auto a = fam.sample_phase_space(ts[2], ts[0], 2, mix_seed(seed, i + 7919));
    err[i] = compose_check(fam, a, ts[0], ts[1], ts[2]);
  }
  return *std::max_element(err.begin(), err.end());
}

void suite_inclusion(const VerifyParams& p, Report& rep) {
  for (const std::string id : {"single", "bump", "heat", "branch2", "nse"}) {
    if (!wanted(p, id)) continue;
    const auto fam = suite_system(id);
    const bool nse = id == "nse";
    rep.add("compose", id, compose_max(*fam, nse ? p.nse_draws : p.draws, p.seed, nse ? -10.0 : -20.0),
            nse ? 1e-5 : 1e-6);
  }
  if (wanted(p, "line")) {
    const auto fam = suite_system("line");
    const auto a = fam->sample_phase_space(0.0, -3.0, 2, p.seed);
    rep.add("compose_restriction_gap", "line", std::abs(compose_check(*fam, a, -3.0, -1.0, 0.0) - 2.0),
            1e-12, "line ignores the initial value, so the gap equals s - r");
  }
  const double eps = 0.02;
  for (const std::string id : {"single", "bump", "heat", "line", "branch2", "nse"}) {
    if (!wanted(p, id)) continue;
    const auto fam = suite_system(id);
    const bool nse = id == "nse";
    const auto sched = nse ? PullbackSchedule::geometric(0.0, 1.0, 1.6, 6) : default_schedule(id, 0.0);
    const auto src = SeedSource::phase_space(*fam, nse ? 6 : 16, p.seed);
    const auto images = tier_images(*fam, src, sched, BranchSelection::kAll);
    const OmegaOptions oo{eps, 1e-3};
    const auto ws = omega_from_images(fam->space(), images, sched.starts, MetricKind::kStrong, oo);
    const auto ww = omega_from_images(fam->space(), images, sched.starts, MetricKind::kWeak, oo);
    if (ws.points.empty()) {
      rep.flag("omega_strong_in_weak", id, true, "strong omega empty at this depth (vacuous)");
    } else if (ww.points.empty()) {
      rep.flag("omega_strong_in_weak", id, false, "weak omega empty while strong is not");
    } else {
      rep.add("omega_strong_in_weak", id,
              set_semidist(fam->space(), ws.points, ww.points, MetricKind::kWeak), 2.0 * eps);
    }
  }
}

void suite_energy(const VerifyParams& p, Report& rep) {
  rep.add("absorbing_radius_formula", "nse",
          std::abs(absorbing_radius(1.0, 1.0, 1.0) - 2.0 / (1.0 - std::exp(-1.0))), 1e-9);
  if (wanted(p, "nse")) {
    const auto cfg = forced_nse_config();
    const NseGalerkin fam(nse_options_from_json(cfg));
    const double R = fam.absorbing_radius();
    const double eps_g = 0.01;
    const double eps_arr[] = {eps_g};
    const auto table = normality_check(fam.options().forcing, eps_arr, -10.0, 10.0, 1.0 / 256.0);
    const double delta = table.front().delta.value_or(0.01);
    const double step = std::min(1.0 / 128.0, delta / 5.0);
    const auto x = fam.random_field(mix_seed(p.seed, 1), 2.0 * R);
    const auto traj = sample_trajectory(fam, 0.0, x, 4.0, step);
    const auto er = energy_inequality_check(fam, traj, std::sqrt(eps_g / fam.options().nu), delta);
    rep.add("energy_violations", "nse", static_cast<double>(er.violations.size()), 0.0,
            "pointwise eps from the normality table");
    rep.add("energy_balance_rate", "nse", er.integral_balance_rate, 1e-6);

    double div = 0.0;
    for (const auto& u : traj.states) div = std::max(div, fam.divergence_defect(u));
    rep.add("divergence_drift_rate", "nse", div / 4.0, 1e-8);

    const double level = fam.l2b_norm_sq() / (1.0 - std::exp(-1.0));
    double excess = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < 4; ++i) {
      SplitMix64 rng(mix_seed(p.seed, 100 + i));
      const auto y = fam.random_field(mix_seed(p.seed, 200 + i), 2.0 * R * rng.uniform());
      const auto tr = sample_trajectory(fam, -5.0, y, 5.0, 0.25);
      const double n0 = std::pow(fam.space().strong_norm(y), 2);
      for (std::size_t k = 0; k < tr.times.size(); ++k) {
        const double bound = n0 * std::exp(-5.0 - tr.times[k]) + level;
        excess = std::max(excess, std::pow(fam.space().strong_norm(tr.states[k]), 2) - bound);
      }
    }
    rep.add("absorbing_inequality_excess", "nse", excess, 1e-6);

    const NseGalerkin free_fam{NseOptions{}};
    const auto z = free_fam.random_field(mix_seed(p.seed, 2), 1.0);
    const auto ft = sample_trajectory(free_fam, 0.0, z, 1.0, 1.0 / 512.0);
    double rise = 0.0;
    for (std::size_t k = 1; k < ft.states.size(); ++k) {
      rise = std::max(rise, free_fam.space().strong_norm(ft.states[k]) -
                                free_fam.space().strong_norm(ft.states[k - 1]));
    }
    rep.add("unforced_norm_increase", "nse", rise, 1e-12);
    const auto fr = energy_inequality_check(free_fam, ft, 0.0, 0.25);
    rep.add("unforced_balance_rate", "nse", fr.integral_balance_rate, 1e-6);
  }
  if (wanted(p, "heat")) {
    const auto fam = suite_system("heat");
    const auto x = fam->sample_phase_space(0.0, 0.0, 1, p.seed).front();
    const auto traj = sample_trajectory(*fam, 0.0, x, 1.0, 1.0 / 1024.0);
    const auto er = energy_inequality_check(*fam, traj, 0.0, 0.25);
    rep.add("energy_violations", "heat", static_cast<double>(er.violations.size()), 0.0);
    rep.add("energy_balance_rate", "heat", er.integral_balance_rate, 1e-6);
  }
}

void suite_invariance(const VerifyParams& p, Report& rep) {
  auto zero_of = [](const TrajectoryFamily& f) {
    const auto& o = f.space().options();
    return SetFamily([z = CoeffState::zero(o.space, o.index_dim, o.components)](double) {
      return std::vector<CoeffState>{z};
    });
  };
  for (const std::string id : {"heat", "branch2"}) {
    if (!wanted(p, id)) continue;
    const auto fam = suite_system(id);
    InvarianceOptions io;
    io.seed = p.seed;
    const auto r = invariance_check(*fam, zero_of(*fam), InvarianceKind::kFull, -2.0, 0.0, io);
    rep.flag("zero_invariant", id, r.verdict == Verdict::kHolds, invariance_label(InvarianceKind::kFull, r.verdict));
  }
  if (wanted(p, "bump")) {
    const auto fam = suite_system("bump");
    const auto src = SeedSource::phase_space(*fam, default_seed_count("bump"), p.seed);
    const SetFamily omega = [&](double t) {
      return omega_pullback(*fam, src, default_schedule("bump", t), MetricKind::kWeak).points;
    };
    InvarianceOptions io;
    io.tol = 0.05;
    io.grid_points = 3;
    io.search_seeds = 2401;
    io.seed = p.seed;
    const auto r = invariance_check(*fam, omega, InvarianceKind::kQuasi, -2.0, 0.0, io);
    rep.flag("omega_quasi_invariant", "bump", r.verdict == Verdict::kHolds,
             invariance_label(InvarianceKind::kQuasi, r.verdict));
  }
  if (wanted(p, "heat")) {
    const HeatSystem heat;
    const auto x = heat.node_seed(64);
    InvarianceOptions io;
    io.metric = MetricKind::kStrong;
    const auto r = invariance_check(
        heat, [&](double) { return std::vector<CoeffState>{x}; }, InvarianceKind::kSemi, -2.0, 0.0, io);
    rep.flag("off_attractor_not_semi_invariant", "heat", r.verdict == Verdict::kFails,
             "expected to fail; semidist " + format_double(r.semi_worst));
  }
}

void suite_tracking(const VerifyParams& p, Report& rep) {
  const auto deep = PullbackSchedule::from_starts(0.0, {-20.0, -30.0, -40.0});
  struct Case {
    const char* id;
    double eps;
    bool strong;
  };
  for (const Case c : {Case{"heat", 0.05, false}, Case{"bump", 1e-9, true},
                       Case{"single", 1e-12, true}, Case{"branch2", 1e-6, true},
                       Case{"forced-scalar", 1e-6, true}}) {
    if (!wanted(p, c.id)) continue;
    const auto fam = make_system(c.id);
    TrackingOptions to;
    to.strong = c.strong;
    to.seed = p.seed;
    const auto r = tracking_check(*fam, 0.0, 2.0, c.eps, deep, to);
    rep.add("tracking_weak", c.id, r.worst_weak, c.eps);
    if (c.strong) rep.add("tracking_strong", c.id, r.worst_strong, c.eps);
  }
  if (wanted(p, "nse")) {
    const auto fam = suite_system("nse");
    bool unsupported = false;
    try {
      tracking_check(*fam, 0.0, 2.0, 0.1, deep);
    } catch (const UnsupportedError&) {
      unsupported = true;
    }
    rep.flag("tracking_unsupported", "nse", unsupported, "no complete trajectories registered");
  }
}

void suite_uniform(const VerifyParams& p, Report& rep) {
  const OmegaOptions oo{0.02, 1e-3};
  if (wanted(p, "forced-scalar")) {
    const ForcedScalarFamily fam(32);
    const auto seeds = fam.seeds(8, p.seed);
    const auto sched = default_schedule("forced-scalar", 0.0);
    const auto hz = aligned_horizons(fam.symbols(), 20.0, 6, 8);
    const auto r = union_inclusion_check(fam, seeds, sched, hz, MetricKind::kWeak, oo);
    rep.flag("estimators_converged", "forced-scalar", r.converged, "");
    rep.add("union_inclusion", "forced-scalar", r.inclusion, r.bound);
    rep.add("union_equality_conditional", "forced-scalar", r.reverse, r.bound,
            "conditional on closed trajectory sets");
    rep.add("shift_identity", "forced-scalar", shift_identity_check(fam, 50, p.seed), 1e-12);
  }
  if (wanted(p, "branch2")) {
    const AutonomousSymbolFamily fam(std::make_shared<BranchingSystem>(), 4);
    const auto seeds = fam.seeds(8, p.seed);
    const auto hz = aligned_horizons(fam.symbols(), 20.0, 4, 8);
    const auto u = uniform_omega(fam, seeds, hz, MetricKind::kWeak, oo);
    double worst = u.points.empty() ? 1.0 : 0.0;
    for (const auto& x : u.points) worst = std::max(worst, fam.family(0.0)->space().strong_norm(x));
    rep.add("uniform_omega_is_zero", "branch2", worst, oo.eps_net);
    const auto r = union_inclusion_check(fam, seeds, default_schedule("branch2", 0.0), hz,
                                         MetricKind::kWeak, oo);
    rep.add("autonomous_collapse", "branch2", std::max(r.inclusion, r.reverse), oo.eps_net);
  }
  if (wanted(p, "nse")) {
    const Json cfg = Json::parse(R"({"forcing": {"modes": [
        {"k": [1, 0, 0], "amp": [1, 0], "time": {"kind": "sin"}}]}})");
    const NseSymbolFamily fam(nse_options_from_json(cfg), 8);
    rep.add("shift_identity", "nse", shift_identity_check(fam, 4, p.seed), 1e-6);
  }
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> s = {"metrics",  "inclusion", "energy", "invariance",
                                             "tracking", "uniform",   "all"};
  return s;
}

CommandResult run_verify(const std::string& suite, const Json& params) {
  const auto& known = verify_suites();
  if (std::find(known.begin(), known.end(), suite) == known.end()) {
    throw UsageError("unknown verify suite '" + suite + "'");
  }
  VerifyParams vp;
  if (params.is_object()) {
    vp.seed = params.value("seed", std::uint64_t{0});
    vp.only = params.value("system", std::string());
    vp.draws = params.value("draws", vp.draws);
    vp.nse_draws = params.value("nse_draws", vp.nse_draws);
  }
  if (!vp.only.empty() && vp.only != "forced-scalar") make_system(vp.only);

  Json suites = Json::object();
  std::size_t violations = 0;
  auto run = [&](const std::string& name, void (*fn)(const VerifyParams&, Report&)) {
    if (suite != "all" && suite != name) return;
    Report rep;
    fn(vp, rep);
    violations += rep.violations();
    suites[name] = Json{{"violations", rep.violations()}, {"checks", rep.checks_json()}};
  };
  run("metrics", suite_metrics);
  run("inclusion", suite_inclusion);
  run("energy", suite_energy);
  run("invariance", suite_invariance);
  run("tracking", suite_tracking);
  run("uniform", suite_uniform);

  Json j{{"schema", 1},
         {"suite", suite},
         {"seed", vp.seed},
         {"system", vp.only.empty() ? Json(nullptr) : Json(vp.only)},
         {"violations", violations},
         {"pass", violations == 0},
         {"suites", suites}};
  CommandResult r;
  r.files.emplace_back("verify_" + suite + ".json", j.dump(2) + "\n");
  r.outcome = violations == 0 ? kExitOk : kExitFails;
  r.summary = "verify " + suite + " violations=" + std::to_string(violations);
  return r;
}

}  // namespace ges
