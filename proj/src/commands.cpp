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
#include "ges/commands.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "ges/errors.hpp"
#include "ges/parallel.hpp"
#include "ges/random.hpp"
#include "ges/registry.hpp"

namespace ges {
namespace {

template <typename T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ParseError(std::string("parameter '") + key + "' has the wrong type");
  }
}

Json object_or_empty(const Json& j, const char* key) {
  if (j.is_object() && j.contains(key) && j.at(key).is_object()) return j.at(key);
  return Json::object();
}

struct Common {
  std::string system;
  Json system_config;
  MetricKind metric = MetricKind::kWeak;
  double eps_net = 0.02;
  double tol = 1e-3;
  double t = 0.0;
  std::size_t seeds = 24;
  std::uint64_t seed = 0;
  PullbackSchedule sched;
};

Common parse_common(const Json& p, const char* default_system = "heat") {
  Common c;
  c.system = get_or<std::string>(p, "system", default_system);
  c.system_config = object_or_empty(p, "system_config");
  c.metric = metric_from_string(get_or<std::string>(p, "metric", "weak"));
  c.eps_net = get_or(p, "eps_net", c.eps_net);
  c.tol = get_or(p, "tol", c.tol);
  c.t = get_or(p, "t", c.t);
  c.seeds = get_or<std::size_t>(p, "seeds", default_seed_count(c.system));
  c.seed = get_or<std::uint64_t>(p, "seed", 0);
  if (!(c.eps_net > 0.0) || !(c.tol > 0.0)) throw UsageError("eps_net and tol must be positive");
  if (c.seeds == 0) throw UsageError("seed count must be positive");
  c.sched = schedule_from_json(object_or_empty(p, "schedule"), c.system, c.t);
  return c;
}

Json profile_json(std::span<const ProfilePoint> profile) {
  Json out = Json::array();
  for (const auto& p : profile) out.push_back(Json{{"s", p.s}, {"semidist", p.semidist}});
  return out;
}

Json states_json(std::span<const CoeffState> xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(state_to_json(x));
  return out;
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::kHolds:
      return kExitOk;
    case Verdict::kFails:
      return kExitFails;
    case Verdict::kInconclusive:
      return kExitInconclusive;
  }
  return kExitInconclusive;
}

bool drift_diverges(const OmegaApprox& o) {
  const std::size_t n = o.tier_drift.size();
  if (n < 3) return false;
  const std::size_t from = n - std::max<std::size_t>(2, (n + 2) / 3);
  for (std::size_t i = std::max<std::size_t>(from, 1); i < n; ++i) {
    if (!(o.tier_drift[i] > o.eps_net)) return false;
    if (i > from && o.tier_drift[i] < o.tier_drift[i - 1]) return false;
  }
  return true;
}

std::vector<CoeffState> candidate_from(const Json& p, const TrajectoryFamily& fam,
                                       const Common& c) {
  if (p.is_object() && p.contains("candidate")) {
    const auto& cand = p.at("candidate");
    if (cand.is_array()) {
      std::vector<CoeffState> out;
      for (const auto& s : cand) out.push_back(state_from_json(s));
      if (out.empty()) throw UsageError("candidate must be nonempty");
      return out;
    }
    if (cand.is_string() && cand.get<std::string>() == "omega") {
      const auto src = SeedSource::phase_space(fam, c.seeds, c.seed);
      auto o = omega_pullback(fam, src, c.sched, c.metric, {c.eps_net, c.tol});
      if (o.points.empty()) throw UsageError("omega candidate is empty (no convergence)");
      return o.points;
    }
    if (!(cand.is_string() && cand.get<std::string>() == "zero")) {
      throw UsageError("candidate must be 'zero', 'omega' or a list of states");
    }
  }
  const auto& o = fam.space().options();
  return {CoeffState::zero(o.space, o.index_dim, o.components)};
}

}  // namespace

CommandResult run_omega(const Json& p) {
  const auto c = parse_common(p);
  const auto fam = make_system(c.system, c.system_config);
  const bool witnesses = get_or(p, "witnesses", false);
  const auto src = SeedSource::phase_space(*fam, c.seeds, c.seed, witnesses);
  const auto o = omega_pullback(*fam, src, c.sched, c.metric, {c.eps_net, c.tol});

  CommandResult r;
  auto j = omega_to_json(o);
  j["schedule"] = Json{{"mode", to_string(c.sched.mode)}, {"starts", c.sched.starts}};
  j["seeds"] = c.seeds;
  j["seed"] = c.seed;
  r.files.emplace_back("omega.json", j.dump(2) + "\n");
  r.files.emplace_back("profile.csv", profile_csv(o.profile, o.metric, o.system, o.t));
  if (o.converged) {
    r.outcome = kExitOk;
  } else if (o.status == OmegaApprox::Status::kNoConvergence && drift_diverges(o)) {
    r.outcome = kExitFails;
  } else {
    r.outcome = kExitInconclusive;
  }
  r.summary = "omega system=" + c.system + " metric=" + to_string(c.metric) +
              " status=" + to_string(o.status) + " points=" + std::to_string(o.points.size());
  return r;
}

CommandResult run_attract(const Json& p) {
  const auto c = parse_common(p);
  const auto fam = make_system(c.system, c.system_config);
  const auto candidate = candidate_from(p, *fam, c);
  const bool witnesses = get_or(p, "witnesses", c.metric == MetricKind::kStrong);
  const auto src = SeedSource::phase_space(*fam, c.seeds, c.seed, witnesses);
  const auto rep = attraction_diagnostic(*fam, candidate, src, c.sched, c.metric, c.tol);

  CommandResult r;
  Json j{{"schema", 1},
         {"system", c.system},
         {"t", c.t},
         {"metric", to_string(c.metric)},
         {"tol", c.tol},
         {"witnesses", witnesses},
         {"verdict", attraction_label(rep.verdict)},
         {"candidate", states_json(candidate)},
         {"profile", profile_json(rep.profile)}};
  r.files.emplace_back("attract.json", j.dump(2) + "\n");
  r.files.emplace_back("profile.csv", profile_csv(rep.profile, c.metric, c.system, c.t));
  r.outcome = verdict_exit(rep.verdict);
  r.summary = "attract system=" + c.system + " metric=" + to_string(c.metric) +
              " verdict=" + attraction_label(rep.verdict);
  return r;
}

CommandResult run_nse(const Json& p) {
  Json cfg = object_or_empty(p, "system_config");
  for (const char* key : {"forcing", "nu", "k_max", "convention"}) {
    if (p.is_object() && p.contains(key)) cfg[key] = p.at(key);
  }
  const auto opts = nse_options_from_json(cfg);
  const NseGalerkin fam(opts);
  const auto eps = get_or<std::vector<double>>(p, "eps", {0.01, 0.05, 0.1, 0.5, 1.0, 2.0});
  const auto analysis = analyze_forcing(opts.forcing, opts.nu, fam.lambda1(), eps,
                                        opts.bound_t_lo, opts.bound_t_hi, opts.bound_step);

  const auto count = get_or<std::size_t>(p, "seeds", 8);
  const auto seed = get_or<std::uint64_t>(p, "seed", 0);
  const double s0 = get_or(p, "s0", -10.0);
  const double t1 = get_or(p, "t", 0.0);
  const double step = get_or(p, "step", 0.25);
  if (!(s0 < t1) || !(step > 0.0)) throw UsageError("nse run needs s0 < t and step > 0");
  const double start_radius = analysis.radius > 0.0 ? 2.0 * analysis.radius : 1.0;
  std::vector<double> times;
  for (std::size_t k = 1;; ++k) {
    const double tk = s0 + step * static_cast<double>(k);
    if (tk >= t1 - 1e-12) break;
    times.push_back(tk);
  }
  times.push_back(t1);

  SplitMix64 rng(mix_seed(seed, 0x6e73652d72756eULL));
  std::vector<CoeffState> seeds;
  for (std::size_t i = 0; i < count; ++i) {
    seeds.push_back(fam.random_field(mix_seed(seed, i), start_radius * rng.uniform()));
  }
  std::vector<std::vector<CoeffState>> traj(count);
  parallel_for(count, [&](std::size_t i) { traj[i] = fam.evolve(s0, seeds[i], times, 0); });

  const double level = analysis.l2b_norm_sq /
                       (opts.nu * (1.0 - std::exp(-opts.nu * fam.lambda1())));
  std::ostringstream csv;
  csv << "seed,t,norm_sq,bound\n";
  std::size_t violations = 0;
  double worst = -std::numeric_limits<double>::infinity();
  PullbackEnsemble ens;
  ens.t = t1;
  for (std::size_t i = 0; i < count; ++i) {
    const double n0 = std::pow(fam.space().strong_norm(seeds[i]), 2);
    csv << i << ',' << format_double(s0) << ',' << format_double(n0) << ','
        << format_double(n0 + level) << '\n';
    for (std::size_t k = 0; k < times.size(); ++k) {
      const double nk = std::pow(fam.space().strong_norm(traj[i][k]), 2);
      const double bound = n0 * std::exp(opts.nu * fam.lambda1() * (s0 - times[k])) + level;
      worst = std::max(worst, nk - bound);
      if (nk > bound + 1e-6) ++violations;
      csv << i << ',' << format_double(times[k]) << ',' << format_double(nk) << ','
          << format_double(bound) << '\n';
    }
    ens.entries.push_back({s0, i, 0, seeds[i], traj[i].back()});
  }

  Json normality = Json::array();
  std::ostringstream ncsv;
  ncsv << "eps,delta,unbounded\n";
  for (const auto& e : analysis.normality) {
    normality.push_back(Json{{"eps", e.eps},
                             {"delta", e.delta ? Json(*e.delta) : Json(nullptr)},
                             {"unbounded", e.unbounded}});
    ncsv << format_double(e.eps) << ',' << (e.delta ? format_double(*e.delta) : "") << ','
         << (e.unbounded ? "true" : "false") << '\n';
  }
  const auto& ball = fam.space().options().ball_radius;
  Json j{{"schema", 1},
         {"nu", opts.nu},
         {"lambda1", fam.lambda1()},
         {"k_max", opts.k_max},
         {"modes", fam.modes().size()},
         {"convention", opts.convention == BallConvention::kRadius ? "radius" : "squared"},
         {"l2b_norm_sq", analysis.l2b_norm_sq},
         {"R", analysis.radius},
         {"ball_radius", ball ? Json(*ball) : Json(nullptr)},
         {"normality", normality},
         {"absorbing",
          Json{{"trajectories", count},
               {"s0", s0},
               {"t", t1},
               {"start_radius", start_radius},
               {"violations", violations},
               {"max_excess", worst}}}};
  CommandResult r;
  r.files.emplace_back("nse_forcing.json", j.dump(2) + "\n");
  r.files.emplace_back("nse_normality.csv", ncsv.str());
  r.files.emplace_back("nse_trajectories.csv", csv.str());
  r.files.emplace_back("nse_ensemble.jsonl", ensemble_to_jsonl(ens));
  r.outcome = violations == 0 ? kExitOk : kExitFails;
  r.summary = "nse l2b=" + format_double(analysis.l2b_norm_sq) +
              " R=" + format_double(analysis.radius) +
              " absorbing_violations=" + std::to_string(violations);
  return r;
}

CommandResult run_uniform(const Json& p) {
  Json sym = object_or_empty(p, "symbols");
  if (sym.empty()) sym = Json{{"kind", "phase"}, {"count", 32}, {"system", "forced-scalar"}};
  const auto symfam = make_symbol_family(sym, object_or_empty(p, "system_config"));
  const auto sys = get_or<std::string>(sym, "system", "forced-scalar");
  const auto metric = metric_from_string(get_or<std::string>(p, "metric", "weak"));
  const OmegaOptions oo{get_or(p, "eps_net", 0.02), get_or(p, "tol", 1e-3)};
  const auto count = get_or<std::size_t>(p, "seeds", sys == "nse" ? 2 : 8);
  const auto seed = get_or<std::uint64_t>(p, "seed", 0);
  const auto sched = schedule_from_json(object_or_empty(p, "schedule"), sys, 0.0);
  const Json hz = object_or_empty(p, "horizons");
  const auto horizons = aligned_horizons(symfam->symbols(), get_or(hz, "min", sys == "nse" ? 8.0 : 20.0),
                                         get_or<std::size_t>(hz, "count", 6),
                                         get_or<std::size_t>(hz, "stride", 8));
  const auto seeds = symfam->seeds(count, seed);
  const auto rep = union_inclusion_check(*symfam, seeds, sched, horizons, metric, oo);
  const auto uni = uniform_omega(*symfam, seeds, horizons, metric, oo);

  auto label = [](Verdict v) {
    return v == Verdict::kHolds ? "holds" : v == Verdict::kFails ? "fails" : "inconclusive";
  };
  Json j{{"schema", 1},
         {"symbols",
          Json{{"kind", "phase"},
               {"count", symfam->symbols().symbols().size()},
               {"system", sys},
               {"closure_note", symfam->symbols().closure_note()}}},
         {"metric", to_string(metric)},
         {"eps_net", oo.eps_net},
         {"inclusion", rep.inclusion},
         {"reverse", rep.reverse},
         {"bound", rep.bound},
         {"converged", rep.converged},
         {"inclusion_verdict", label(rep.inclusion_verdict)},
         {"equality_verdict", std::string("conditional-") + label(rep.equality_verdict)},
         {"equality_note",
          "equality assumes closed trajectory sets in C([s,inf);X_w), which a finite sample "
          "cannot verify"},
         {"union_points", rep.union_points},
         {"uniform_points", rep.uniform_points},
         {"horizons", horizons},
         {"uniform_omega", omega_to_json(uni)}};
  CommandResult r;
  r.files.emplace_back("uniform.json", j.dump(2) + "\n");
  r.files.emplace_back("uniform_profile.csv", profile_csv(uni.profile, metric, sys, 0.0));
  r.outcome = verdict_exit(rep.inclusion_verdict);
  r.summary = "uniform system=" + sys + " inclusion=" + format_double(rep.inclusion) +
              " reverse=" + format_double(rep.reverse) + " verdict=" + label(rep.inclusion_verdict);
  return r;
}

CommandResult run_invariance(const Json& p) {
  const auto c = parse_common(p);
  const auto fam = make_system(c.system, c.system_config);
  const auto kind = invariance_from_string(get_or<std::string>(p, "kind", "full"));
  InvarianceOptions io;
  io.tol = get_or(p, "tol", 0.05);
  io.metric = c.metric;
  io.grid_points = get_or<std::size_t>(p, "grid_points", io.grid_points);
  io.search_depth = get_or(p, "search_depth", io.search_depth);
  io.search_seeds = get_or<std::size_t>(p, "search_seeds", std::max(io.search_seeds, c.seeds));
  io.seed = c.seed;
  const double t_min = get_or(p, "t_min", -2.0);
  const double t_max = get_or(p, "t_max", 0.0);

  SetFamily sets;
  std::string set_label = "zero";
  const Json set = p.is_object() && p.contains("set") ? p.at("set") : Json("zero");
  if (set.is_string() && set.get<std::string>() == "zero") {
    const auto& o = fam->space().options();
    sets = [z = CoeffState::zero(o.space, o.index_dim, o.components)](double) {
      return std::vector<CoeffState>{z};
    };
  } else if (set.is_string() && set.get<std::string>() == "omega") {
    set_label = "omega";
    const TrajectoryFamily* f = fam.get();
    const Json sched_cfg = object_or_empty(p, "schedule");
    sets = [f, c, sched_cfg](double t) {
      const auto sched = schedule_from_json(sched_cfg, c.system, t);
      const auto src = SeedSource::phase_space(*f, c.seeds, c.seed);
      return omega_pullback(*f, src, sched, c.metric, {c.eps_net, c.tol}).points;
    };
  } else if (set.is_object() && set.contains("states")) {
    set_label = "states";
    std::vector<CoeffState> xs;
    for (const auto& s : set.at("states")) xs.push_back(state_from_json(s));
    sets = [xs](double) { return xs; };
  } else {
    throw UsageError("invariance set must be 'zero', 'omega' or {\"states\": [...]}");
  }
  const auto rep = invariance_check(*fam, sets, kind, t_min, t_max, io);
  auto label = [](const std::optional<Verdict>& v) -> Json {
    if (!v) return nullptr;
    return *v == Verdict::kHolds ? "holds" : *v == Verdict::kFails ? "fails" : "inconclusive";
  };
  Json j{{"schema", 1},
         {"system", c.system},
         {"kind", to_string(kind)},
         {"set", set_label},
         {"metric", to_string(c.metric)},
         {"tol", io.tol},
         {"window", {t_min, t_max}},
         {"verdict", invariance_label(kind, rep.verdict)},
         {"semi", label(rep.semi)},
         {"quasi", label(rep.quasi)},
         {"semi_worst", rep.semi_worst},
         {"unmatched", rep.unmatched}};
  CommandResult r;
  r.files.emplace_back("invariance.json", j.dump(2) + "\n");
  r.outcome = verdict_exit(rep.verdict);
  r.summary = "invariance system=" + c.system + " kind=" + to_string(kind) +
              " verdict=" + invariance_label(kind, rep.verdict);
  return r;
}

}  // namespace ges
