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
#include "ges/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ges/errors.hpp"
#include "ges/parallel.hpp"

namespace ges {

CoeffState TrajectoryFamily::evolve_to(double s, const CoeffState& x, double t,
                                       int branch) const {
  const double ts[] = {t};
  return evolve(s, x, ts, branch).front();
}

SeedSource SeedSource::fixed(std::vector<CoeffState> seeds) {
  if (seeds.empty()) throw UsageError("seed set must be nonempty");
  return SeedSource([seeds = std::move(seeds)](double, double) { return seeds; });
}

SeedSource SeedSource::phase_space(const TrajectoryFamily& fam, std::size_t count,
                                   std::uint64_t seed, bool with_witnesses) {
  const TrajectoryFamily* f = &fam;
  return SeedSource([f, count, seed, with_witnesses](double t, double s) {
    auto out = f->sample_phase_space(t, s, count, seed);
    if (with_witnesses) {
      auto extra = f->depth_witnesses(t, s);
      out.insert(out.end(), std::make_move_iterator(extra.begin()),
                 std::make_move_iterator(extra.end()));
    }
    return out;
  });
}

std::vector<CoeffState> PullbackEnsemble::states() const {
  std::vector<CoeffState> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.state);
  return out;
}

PullbackEnsemble pullback_image(const TrajectoryFamily& fam, std::span<const CoeffState> seeds,
                                double t, double s, BranchSelection branches) {
  if (s > t) throw UsageError("pullback_image needs s <= t");
  if (seeds.empty()) throw UsageError("pullback_image needs a nonempty seed set");
  const auto& space = fam.space();
  const auto& radius = space.options().ball_radius;
  const double blowup = (radius && *radius > 0.0) ? 10.0 * *radius
                                                  : std::numeric_limits<double>::infinity();

  std::vector<std::vector<EnsembleEntry>> per_seed(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) {
    const auto& x = seeds[i];
    int count = fam.branch_count(s, x);
    if (branches == BranchSelection::kFirst) count = std::min(count, 1);
    for (int b = 0; b < count; ++b) {
      CoeffState y = fam.evolve_to(s, x, t, b);
      if (space.strong_norm(y) > blowup) {
        throw DivergenceError("seed " + std::to_string(i) + " (branch " + std::to_string(b) +
                              ") left 10x the phase-space ball between s=" + std::to_string(s) +
                              " and t=" + std::to_string(t));
      }
      per_seed[i].push_back({s, i, b, x, std::move(y)});
    }
  });

  PullbackEnsemble out;
  out.t = t;
  for (auto& v : per_seed) {
    for (auto& e : v) out.entries.push_back(std::move(e));
  }
  return out;
}

double compose_check(const TrajectoryFamily& fam, std::span<const CoeffState> seeds, double r,
                     double s, double t) {
  if (!(r <= s && s <= t)) throw UsageError("compose_check needs r <= s <= t");
  const auto direct = pullback_image(fam, seeds, t, r).states();
  if (direct.empty()) return 0.0;
  const auto mid = pullback_image(fam, seeds, s, r).states();
  if (mid.empty()) return std::numeric_limits<double>::infinity();
  const auto composed = pullback_image(fam, mid, t, s).states();
  if (composed.empty()) return std::numeric_limits<double>::infinity();
  return set_semidist(fam.space(), direct, composed, MetricKind::kStrong);
}

SampledTrajectory sample_trajectory(const TrajectoryFamily& fam, double s, const CoeffState& x,
                                    double horizon, double step, int branch) {
  if (!(step > 0.0) || !(horizon >= 0.0)) throw UsageError("invalid sampling grid");
  SampledTrajectory out;
  const auto n = static_cast<std::size_t>(std::llround(horizon / step));
  out.times.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) out.times.push_back(s + step * static_cast<double>(i));
  out.states = fam.evolve(s, x, out.times, branch);
  return out;
}

EnergyCheckReport energy_inequality_check(const TrajectoryFamily& fam,
                                          const SampledTrajectory& u, double eps, double delta,
                                          const EnergyCheckOptions& opts) {
  const auto& ts = u.times;
  const std::size_t n = ts.size();
  if (n != u.states.size()) throw UsageError("times and states differ in length");
  if (!(delta > 0.0) || !(eps >= 0.0)) throw UsageError("need delta > 0 and eps >= 0");
  double max_gap = 0.0;
  for (std::size_t i = 1; i < n; ++i) max_gap = std::max(max_gap, ts[i] - ts[i - 1]);
  if (n >= 2 && !(max_gap < delta / 4.0)) {
    throw UsageError("energy check needs grid spacing below delta/4");
  }

  const auto& space = fam.space();
  std::vector<double> norm(n);
  for (std::size_t i = 0; i < n; ++i) norm[i] = space.strong_norm(u.states[i]);

  EnergyCheckReport rep;
  rep.epsilon_used = eps;
  rep.delta_used = delta;
  rep.max_residual = -std::numeric_limits<double>::infinity();

  std::size_t lo = 0;
  for (std::size_t i = 1; i < n; ++i) {
    while (lo < i && !(ts[lo] > ts[i] - delta)) ++lo;
    if (lo >= i) continue;
    std::size_t pass = 0;
    EnergyViolation worst{0, 0, 0, 0, -std::numeric_limits<double>::infinity()};
    for (std::size_t j = lo; j < i; ++j) {
      const double lhs = norm[i];
      const double rhs = norm[j] + eps;
      const double res = lhs - rhs;
      if (res <= opts.tolerance) ++pass;
      if (res > worst.residual) worst = {ts[j], ts[i], lhs, rhs, res};
      rep.max_residual = std::max(rep.max_residual, res);
    }
    const double share = static_cast<double>(pass) / static_cast<double>(i - lo);
    if (share < opts.fraction) rep.violations.push_back(worst);
  }

  // Integral form with trapezoid sums on the full and the half-resolution grid;
  // their Richardson combination is the residual, their gap the error estimate.
  std::vector<double> integrand(n);
  bool has_terms = n >= 3;
  for (std::size_t i = 0; i < n && has_terms; ++i) {
    auto terms = fam.energy_terms(ts[i], u.states[i]);
    if (!terms) {
      has_terms = false;
      break;
    }
    integrand[i] = terms->dissipation - terms->forcing_work;
  }
  rep.has_integral_form = has_terms;
  if (!has_terms) {
    rep.integral_max_residual = std::numeric_limits<double>::quiet_NaN();
    if (n < 2) rep.max_residual = 0.0;
    return rep;
  }

  std::vector<double> fine(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    fine[i] = fine[i - 1] + 0.5 * (ts[i] - ts[i - 1]) * (integrand[i] + integrand[i - 1]);
  }
  std::vector<std::size_t> even;
  for (std::size_t i = 0; i < n; i += 2) even.push_back(i);
  std::vector<double> rich(even.size(), 0.0), gap(even.size(), 0.0);
  double coarse = 0.0;
  for (std::size_t e = 1; e < even.size(); ++e) {
    const std::size_t a = even[e - 1], b = even[e];
    coarse += 0.5 * (ts[b] - ts[a]) * (integrand[b] + integrand[a]);
    rich[e] = (4.0 * fine[b] - coarse) / 3.0;
    gap[e] = std::abs(fine[b] - coarse) / 3.0;
  }
  auto energy = [&](std::size_t i) { return norm[i] * norm[i]; };

  const std::size_t stride = std::max<std::size_t>(1, even.size() / std::max<std::size_t>(1, opts.max_anchors));
  rep.integral_max_residual = -std::numeric_limits<double>::infinity();
  rep.integral_residual_rate = -std::numeric_limits<double>::infinity();
  for (std::size_t ea = 0; ea + 1 < even.size(); ea += stride) {
    for (std::size_t eb = ea + 1; eb < even.size(); ++eb) {
      const std::size_t a = even[ea], b = even[eb];
      const double lhs = energy(b) + 2.0 * (rich[eb] - rich[ea]);
      const double rhs = energy(a);
      const double res = lhs - rhs;
      const double qerr = 2.0 * (gap[eb] + gap[ea]);
      rep.quadrature_error = std::max(rep.quadrature_error, qerr);
      rep.integral_max_residual = std::max(rep.integral_max_residual, res);
      rep.integral_residual_rate = std::max(rep.integral_residual_rate, res / (ts[b] - ts[a]));
      rep.integral_balance_rate =
          std::max(rep.integral_balance_rate, std::abs(res) / std::max(1.0, ts[b] - ts[a]));
      if (res > opts.tolerance + qerr + 1e-12) rep.violations.push_back({ts[a], ts[b], lhs, rhs, res});
    }
  }
  rep.max_residual = std::max(rep.max_residual, rep.integral_max_residual);
  return rep;
}

ConvergenceReport weak_c_convergence_check(const TrajectoryFamily& fam,
                                           std::span<const CoeffState> seeds, double s,
                                           double horizon, double step) {
  if (seeds.size() < 2) throw UsageError("weak_c_convergence_check needs at least 2 seeds");
  std::vector<SampledTrajectory> traj(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) {
    traj[i] = sample_trajectory(fam, s, seeds[i], horizon, step);
  });
  const auto& space = fam.space();
  const auto& limit = traj.back();
  const std::size_t m = seeds.size() - 1;  // approximants
  const std::size_t ngrid = limit.times.size();

  ConvergenceReport rep;
  std::size_t converged = 0;
  for (std::size_t g = 0; g < ngrid; ++g) {
    rep.weak_sup = std::max(
        rep.weak_sup, space.weak_dist(traj[m - 1].states[g], limit.states[g]).value);
    bool monotone = true;
    double first = 0.0, prev = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double d = space.strong_dist(traj[i].states[g], limit.states[g]);
      if (i == 0) first = d;
      else if (d > prev + 1e-12) monotone = false;
      prev = d;
    }
    if (monotone && (prev <= 1e-12 || prev <= 0.5 * first || m == 1)) ++converged;
  }
  rep.strong_fraction = ngrid ? static_cast<double>(converged) / static_cast<double>(ngrid) : 0.0;
  return rep;
}

}  // namespace ges
