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
#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ges/evolution.hpp"
#include "ges/io.hpp"
#include "ges/nse.hpp"
#include "ges/omega.hpp"
#include "ges/parallel.hpp"
#include "ges/random.hpp"
#include "ges/registry.hpp"
#include "ges/symbols.hpp"
#include "ges/systems.hpp"

namespace {

using namespace ges;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(GES_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("ges_acceptance_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

Json unit_forcing() {
  return Json::parse(R"({"forcing":{"modes":[{"k":[1,0,0],"amp":[1,0],"time":{"kind":"const"}}]}})");
}

Outcome heat_weak_attraction() {
  const auto t0 = Clock::now();
  HeatSystem heat;
  const auto seeds = heat.sample_phase_space(0.0, 0.0, 24, 7);
  for (const auto& x : seeds) {
    if (std::abs(heat.space().strong_norm(x) - 1.0) > 1e-12) return {false, "seed not unit norm"};
  }
  const auto sched = PullbackSchedule::linear(0.0, 2.5, 16);
  const std::vector<CoeffState> zero{CoeffState::zero("heat", 1, 1)};
  const auto rep = attraction_diagnostic(heat, zero, SeedSource::fixed(seeds), sched,
                                         MetricKind::kWeak, 1e-3);
  bool monotone = true;
  for (std::size_t i = 1; i < rep.profile.size(); ++i) {
    monotone = monotone && rep.profile[i].semidist <= rep.profile[i - 1].semidist;
  }
  const double last = rep.profile.back().semidist;
  const double secs = seconds_since(t0);
  const bool ok = monotone && last <= 1e-3 && std::abs(rep.profile.back().s + 40.0) < 1e-9 &&
                  secs < 10.0;
  return {ok, "seeds=24 monotone=" + std::string(monotone ? "yes" : "no") + " final(s=" +
                  num(rep.profile.back().s) + ")=" + num(last) + " runtime=" + num(secs) + "s"};
}

Outcome heat_strong_witness() {
  HeatSystem heat;
  bool ok = true;
  std::string detail;
  for (double s0 : {-1.0, -2.0, -4.0}) {
    const auto w = heat.band_witness(0.0, s0);
    const double formula = 0.5 * (std::log2(std::numbers::ln2 / (0.0 - s0)) + 2.0);
    const int j_expect = static_cast<int>(std::floor(formula));
    const double norm = heat.space().strong_norm(heat.evolve_to(s0, w.f_hat, 0.0));
    ok = ok && norm >= 0.5 - 1e-6 && w.j == j_expect && std::abs(w.bound - formula) < 1e-12;
    detail += "s0=" + num(s0) + ":j=" + std::to_string(w.j) + "/" + std::to_string(j_expect) +
              ",norm=" + num(norm) + " ";
  }
  return {ok, detail};
}

Outcome bump_weak_omega() {
  BumpSystem bump;
  const double eps = 0.02;
  const auto sched = default_schedule("bump", 0.0);
  const auto src = SeedSource::phase_space(bump, default_seed_count("bump"), 7);
  const auto images = tier_images(bump, src, sched, BranchSelection::kAll);
  const auto o = omega_from_images(bump.space(), images, sched.starts, MetricKind::kWeak,
                                   OmegaOptions{eps, 1e-3});
  const std::vector<CoeffState> zero{CoeffState::zero("l2z", 1, 1)};
  const double d_zero = o.points.empty()
                            ? INFINITY
                            : set_semidist(bump.space(), zero, o.points, MetricKind::kWeak);
  double worst = 0.0;
  for (double r = -10.0; r <= 10.0 + 1e-12; r += 0.25) {
    const std::vector<CoeffState> u{bump_state(r, 0.0)};
    worst = std::max(worst, o.points.empty()
                                ? INFINITY
                                : set_semidist(bump.space(), u, o.points, MetricKind::kWeak));
  }
  double norm_dev = 0.0;
  for (const auto& tier : images) {
    for (const auto& x : tier) norm_dev = std::max(norm_dev, std::abs(bump.space().strong_norm(x) - 1.0));
  }
  const bool ok = d_zero <= eps && worst <= eps && norm_dev <= 1e-9;
  return {ok, "points=" + std::to_string(o.points.size()) + " d(0)=" + num(d_zero) +
                  " max_r d(u(r))=" + num(worst) + " (r in [-10,10]) strong norm dev=" +
                  num(norm_dev)};
}

Outcome line_fails() {
  LineSystem line;
  const auto sched = default_schedule("line", 0.0);
  const auto src = SeedSource::phase_space(line, 24, 7);
  std::vector<std::vector<CoeffState>> candidates{{LineSystem::point(0.0)},
                                                  {LineSystem::point(5.0)},
                                                  {LineSystem::point(-1e3)}};
  std::vector<CoeffState> grid;
  for (int i = -10; i <= 10; ++i) grid.push_back(LineSystem::point(i));
  candidates.push_back(grid);
  bool ok = true;
  double last = 0.0;
  for (const auto& c : candidates) {
    const auto rep = attraction_diagnostic(line, c, src, sched, MetricKind::kStrong, 1e-3);
    ok = ok && rep.verdict == Verdict::kFails;
    const std::size_t n = rep.profile.size();
    for (std::size_t i = n / 2 + 1; i < n; ++i) {
      ok = ok && rep.profile[i].semidist > rep.profile[i - 1].semidist;
    }
    // growth tracks the depth t - s
    const double depth = -rep.profile.back().s;
    ok = ok && rep.profile.back().semidist >= depth - 10.0 - 1e-9;
    last = rep.profile.back().semidist;
  }
  const auto dir = scratch("line");
  const int rc_attract = run_cli("--out " + dir.string() + " attract --system line --metric strong");
  const int rc_omega = run_cli("--out " + dir.string() + " omega --system line --metric strong");
  ok = ok && rc_attract == 3 && rc_omega == 3;
  return {ok, "candidates=4 all fail, last semidist=" + num(last) + " at depth " +
                  num(-sched.starts.back()) + ", exit attract=" + std::to_string(rc_attract) +
                  " omega=" + std::to_string(rc_omega)};
}

double compose_max(const TrajectoryFamily& fam, std::size_t draws, std::uint64_t seed, double lo) {
  std::vector<double> err(draws);
  parallel_for(draws, [&](std::size_t i) {
    SplitMix64 rng(mix_seed(seed, i));
    std::array<double, 3> ts{rng.uniform(lo, 0.0), rng.uniform(lo, 0.0), rng.uniform(lo, 0.0)};
    std::sort(ts.begin(), ts.end());
    const auto a = fam.sample_phase_space(ts[2], ts[0], 2, mix_seed(seed, i + 7919));
    err[i] = compose_check(fam, a, ts[0], ts[1], ts[2]);
  });
  return *std::max_element(err.begin(), err.end());
}

Outcome composition() {
  bool ok = true;
  std::string detail;
  for (const std::string id : {"single", "bump", "heat", "branch2", "nse"}) {
    const bool nse = id == "nse";
    const auto fam = make_system(id, nse ? unit_forcing() : Json::object());
    const double e = compose_max(*fam, 100, 7, nse ? -10.0 : -20.0);
    ok = ok && e <= (nse ? 1e-5 : 1e-6);
    detail += id + "=" + num(e) + " ";
  }
  const auto line = make_system("line");
  const auto a = line->sample_phase_space(0.0, -3.0, 2, 7);
  detail += "(line excluded: its trajectories t-s are not restriction-closed, gap=" +
            num(compose_check(*line, a, -3.0, -1.0, 0.0)) + " for r=-3 s=-1)";
  return {ok, detail};
}

Outcome strong_in_weak() {
  const double eps = 0.02;
  bool ok = true;
  std::string detail;
  for (const auto& id : system_ids()) {
    const bool nse = id == "nse";
    const auto fam = make_system(id, nse ? unit_forcing() : Json::object());
    const auto sched = nse ? PullbackSchedule::geometric(0.0, 1.0, 1.6, 6) : default_schedule(id, 0.0);
    const auto src = SeedSource::phase_space(*fam, nse ? 6 : 24, 7);
    const auto images = tier_images(*fam, src, sched, BranchSelection::kAll);
    const OmegaOptions oo{eps, 1e-3};
    const auto ws = omega_from_images(fam->space(), images, sched.starts, MetricKind::kStrong, oo);
    const auto ww = omega_from_images(fam->space(), images, sched.starts, MetricKind::kWeak, oo);
    if (ws.points.empty()) {
      detail += id + "=empty ";
    } else if (ww.points.empty()) {
      ok = false;
      detail += id + "=weak-empty ";
    } else {
      const double d = set_semidist(fam->space(), ws.points, ww.points, MetricKind::kWeak);
      ok = ok && d <= 2.0 * eps;
      detail += id + "=" + num(d) + " ";
    }
  }
  return {ok, detail};
}

Outcome forward_vs_pullback() {
  const double eps = 0.02;
  bool ok = true;
  std::string detail;
  for (const std::string id : {"bump", "branch2"}) {
    const auto fam = make_system(id);
    const auto sched = default_schedule(id, 0.0);
    const auto src = SeedSource::phase_space(*fam, default_seed_count(id), 7);
    const OmegaOptions oo{eps, 1e-3};
    const auto pb = omega_pullback(*fam, src, sched, MetricKind::kWeak, oo);
    const auto fw = forward_omega(*fam, src, horizons_of(sched), MetricKind::kWeak, oo);
    if (pb.points.empty() || fw.points.empty()) {
      ok = false;
      detail += id + "=empty ";
      continue;
    }
    const double d = hausdorff_dist(fam->space(), pb.points, fw.points, MetricKind::kWeak);
    ok = ok && d <= 2.0 * eps;
    detail += id + "=" + num(d) + " ";
  }
  return {ok, detail};
}

Outcome nse_energy() {
  const NseGalerkin nse(nse_options_from_json(unit_forcing()));
  const double R = nse.absorbing_radius();
  const double r_err = std::abs(R - 2.0 / (1.0 - std::exp(-1.0)));

  // balance residual, forced and unforced
  double balance = 0.0;
  const NseGalerkin free_nse{NseOptions{}};
  for (const NseGalerkin* f : {&nse, &free_nse}) {
    const auto x = f->random_field(11, f == &nse ? 2.0 * R : 1.0);
    const auto tr = sample_trajectory(*f, 0.0, x, 2.0, 1.0 / 512.0);
    const auto rep = energy_inequality_check(*f, tr, 0.1, 0.25);
    balance = std::max(balance, rep.integral_balance_rate);
  }

  // absorbing inequality for an ensemble with |u(s)| <= 2R
  const double level = nse.l2b_norm_sq() / (1.0 - std::exp(-1.0));
  const double s = -10.0;
  const std::size_t count = 8;
  std::vector<double> excess(count, -INFINITY);
  parallel_for(count, [&](std::size_t i) {
    SplitMix64 rng(mix_seed(7, i));
    const double radius = i == 0 ? 2.0 * R : 2.0 * R * rng.uniform();
    const auto tr = sample_trajectory(nse, s, nse.random_field(mix_seed(7, 100 + i), radius),
                                      10.0, 0.25);
    std::vector<double> n2(tr.states.size());
    for (std::size_t k = 0; k < n2.size(); ++k) n2[k] = std::pow(nse.space().strong_norm(tr.states[k]), 2);
    for (std::size_t b = 0; b < n2.size(); ++b) {
      for (std::size_t a = 0; a <= b; ++a) {
        const double bound = n2[a] * std::exp(tr.times[a] - tr.times[b]) + level;
        excess[i] = std::max(excess[i], n2[b] - bound);
      }
    }
  });
  const double worst = *std::max_element(excess.begin(), excess.end());
  const bool ok = balance <= 1e-6 && r_err <= 1e-9 && worst <= 1e-6 && nse.modes().size() == 256;
  return {ok, "K_max=4 balance/unit time=" + num(balance) + " |R-2/(1-e^-1)|=" + num(r_err) +
                  " absorbing excess=" + num(worst) + " (8 trajectories, |u(s)|<=2R)"};
}

Outcome uniform_inclusion() {
  ForcedScalarFamily fam(32);
  const auto seeds = fam.seeds(8, 7);
  const auto horizons = aligned_horizons(fam.symbols(), 20.0, 6, 8);
  const OmegaOptions oo{0.02, 1e-3};
  const auto r = union_inclusion_check(fam, seeds, default_schedule("forced-scalar", 0.0), horizons,
                                       MetricKind::kWeak, oo);
  const bool ok = r.inclusion <= 2.0 * oo.eps_net && r.reverse <= 2.0 * oo.eps_net;
  return {ok, "inclusion=" + num(r.inclusion) + " reverse=" + num(r.reverse) + " bound=" +
                  num(2.0 * oo.eps_net) + " union=" + std::to_string(r.union_points) +
                  " uniform=" + std::to_string(r.uniform_points)};
}

Outcome determinism() {
  const auto a = scratch("det_a"), b = scratch("det_b");
  const int ra = run_cli("--out " + a.string() + " --seed 7 verify all");
  const int rb = run_cli("--out " + b.string() + " --seed 7 verify all");
  std::size_t files = 0;
  bool same = true;
  for (const auto& e : fs::directory_iterator(a)) {
    ++files;
    same = same && slurp(e.path()) == slurp(b / e.path().filename());
  }
  const bool ok = ra == 0 && rb == 0 && files > 0 && same;
  return {ok, "exit=" + std::to_string(ra) + "," + std::to_string(rb) + " reports=" +
                  std::to_string(files) + " identical=" + (same ? "yes" : "no")};
}

}  // namespace

int main() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  set_worker_count(static_cast<int>(std::min(hw, 8u)));

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"heat weak attraction to {0}", heat_weak_attraction},
      {"heat strong witness", heat_strong_witness},
      {"bump weak omega and strong norms", bump_weak_omega},
      {"line attraction fails", line_fails},
      {"composition inclusion", composition},
      {"strong omega inside weak omega", strong_in_weak},
      {"forward vs pullback omega", forward_vs_pullback},
      {"nse energy and absorption", nse_energy},
      {"uniform vs pullback inclusion", uniform_inclusion},
      {"verify determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2zu %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
