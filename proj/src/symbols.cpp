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
#include "ges/symbols.hpp"

#include <cmath>
#include <numbers>

#include "ges/errors.hpp"
#include "ges/parallel.hpp"
#include "ges/random.hpp"

namespace ges {
namespace {

DualMetricSpace scalar_space() {
  DualMetricSpace::Options o;
  o.space = "forced-scalar";
  o.truncation_radius = 1;
  o.ball_radius = 2.0;
  o.weak_equals_strong = true;
  return DualMetricSpace(o);
}

}  // namespace

SymbolSpace SymbolSpace::phases(std::size_t count, double period) {
  if (count == 0) throw UsageError("symbol sample must be nonempty");
  if (!(period > 0.0)) throw UsageError("symbol period must be positive");
  SymbolSpace s;
  s.period_ = period;
  for (std::size_t i = 0; i < count; ++i) {
    s.symbols_.push_back(period * static_cast<double>(i) / static_cast<double>(count));
  }
  s.note_ = std::to_string(count) + " equally spaced phases sampling the circle of period " +
            std::to_string(period) + "; the closure is approached by refining the sample";
  return s;
}

double SymbolSpace::shift(double s, double sigma) const {
  if (!(s >= 0.0)) throw UsageError("symbol shifts need s >= 0");
  const double r = std::fmod(sigma + s, period_);
  return r < 0.0 ? r + period_ : r;
}

std::vector<CoeffState> SymbolFamily::seeds(std::size_t count, std::uint64_t seed) const {
  return family(symbols().symbols().front())->sample_phase_space(0.0, 0.0, count, seed);
}

ForcedScalarSystem::ForcedScalarSystem(double sigma) : space_(scalar_space()), sigma_(sigma) {}

double ForcedScalarSystem::orbit(double t) const {
  return 0.5 * (std::cos(t + sigma_) + std::sin(t + sigma_));
}

CoeffState ForcedScalarSystem::point(double u) {
  return CoeffState::scalar("forced-scalar", {0}, {u});
}

double ForcedScalarSystem::value(const CoeffState& x) {
  const auto v = x.find({0, 0, 0});
  return v.empty() ? 0.0 : v[0].real();
}

std::vector<CoeffState> ForcedScalarSystem::evolve(double s, const CoeffState& x,
                                                   std::span<const double> ts, int branch) const {
  if (branch != 0) throw UsageError("forced-scalar has a single branch");
  if (x.space() != "forced-scalar") throw UsageError("state does not belong to forced-scalar");
  const double u0 = value(x);
  std::vector<CoeffState> out;
  out.reserve(ts.size());
  for (double t : ts) {
    if (t < s) throw UsageError("evolution times must be >= the start time");
    out.push_back(point((u0 - orbit(s)) * std::exp(-(t - s)) + orbit(t)));
  }
  return out;
}

std::vector<CoeffState> ForcedScalarSystem::sample_phase_space(double, double, std::size_t count,
                                                               std::uint64_t seed) const {
  SplitMix64 rng(mix_seed(seed, 0x7363616cULL));
  std::vector<CoeffState> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(point(rng.uniform(-2.0, 2.0)));
  return out;
}

std::vector<CompleteTrajectory> ForcedScalarSystem::complete_trajectories(
    double, const CoeffState&) const {
  return {{"periodic orbit", [this](double t) { return point(orbit(t)); }}};
}

ForcedScalarFamily::ForcedScalarFamily(std::size_t count)
    : symbols_(SymbolSpace::phases(count)) {}

std::shared_ptr<const TrajectoryFamily> ForcedScalarFamily::family(double sigma) const {
  return std::make_shared<ForcedScalarSystem>(sigma);
}

AutonomousSymbolFamily::AutonomousSymbolFamily(std::shared_ptr<const TrajectoryFamily> fam,
                                               std::size_t count)
    : fam_(std::move(fam)), symbols_(SymbolSpace::phases(count)) {
  if (!fam_) throw UsageError("autonomous symbol family needs a system");
}

NseSymbolFamily::NseSymbolFamily(NseOptions base, std::size_t count)
    : base_(std::move(base)), symbols_(SymbolSpace::phases(count)) {
  for (double sigma : symbols_.symbols()) {
    NseOptions o = base_;
    o.forcing = base_.forcing.shifted(sigma);
    sampled_.push_back(std::make_shared<NseGalerkin>(std::move(o)));
  }
}

std::shared_ptr<const TrajectoryFamily> NseSymbolFamily::family(double sigma) const {
  const auto& s = symbols_.symbols();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == sigma) return sampled_[i];
  }
  NseOptions o = base_;
  o.forcing = base_.forcing.shifted(sigma);
  return std::make_shared<NseGalerkin>(std::move(o));
}

std::vector<CoeffState> NseSymbolFamily::seeds(std::size_t count, std::uint64_t seed) const {
  return sampled_.front()->sample_phase_space(0.0, 0.0, count, seed);
}

std::vector<double> aligned_horizons(const SymbolSpace& space, double min_horizon,
                                     std::size_t count, std::size_t stride) {
  if (count < 3 || stride == 0) throw UsageError("aligned horizons need count >= 3, stride >= 1");
  const double unit = space.period() / static_cast<double>(space.symbols().size());
  const double first = std::ceil(min_horizon / unit - 1e-12);
  std::vector<double> h;
  for (std::size_t i = 0; i < count; ++i) {
    h.push_back(unit * (first + static_cast<double>(i * stride)));
  }
  return h;
}

OmegaApprox uniform_omega(const SymbolFamily& symfam, std::span<const CoeffState> seeds,
                          std::span<const double> horizons, MetricKind metric,
                          const OmegaOptions& opts) {
  const auto& sigmas = symfam.symbols().symbols();
  if (sigmas.empty()) throw UsageError("symbol sample must be nonempty");
  if (seeds.empty()) throw UsageError("uniform omega needs a nonempty seed set");
  if (horizons.size() < 3) throw UsageError("uniform omega needs at least 3 horizons");
  std::vector<std::shared_ptr<const TrajectoryFamily>> fams;
  for (double s : sigmas) fams.push_back(symfam.family(s));

  std::vector<std::vector<CoeffState>> images(horizons.size());
  for (std::size_t h = 0; h < horizons.size(); ++h) {
    if (!(horizons[h] >= 0.0) || (h > 0 && !(horizons[h] > horizons[h - 1]))) {
      throw UsageError("horizons must be non-negative and strictly increasing");
    }
    std::vector<std::vector<CoeffState>> per(sigmas.size());
    parallel_for(sigmas.size(), [&](std::size_t i) {
      per[i] = pullback_image(*fams[i], seeds, horizons[h], 0.0, opts.branches).states();
    });
    for (auto& p : per) images[h].insert(images[h].end(), p.begin(), p.end());
  }
  auto out = omega_from_images(fams.front()->space(), images, horizons, metric, opts);
  out.system = symfam.name();
  out.forward = true;
  return out;
}

OmegaApprox per_symbol_pullback(const SymbolFamily& symfam, double sigma,
                                std::span<const CoeffState> seeds, const PullbackSchedule& sched,
                                MetricKind metric, const OmegaOptions& opts) {
  const auto fam = symfam.family(sigma);
  return omega_pullback(*fam, SeedSource::fixed({seeds.begin(), seeds.end()}), sched, metric,
                        opts);
}

UnionInclusionReport union_inclusion_check(const SymbolFamily& symfam,
                                           std::span<const CoeffState> seeds,
                                           const PullbackSchedule& sched,
                                           std::span<const double> horizons, MetricKind metric,
                                           const OmegaOptions& opts) {
  const auto& sigmas = symfam.symbols().symbols();
  std::vector<OmegaApprox> per(sigmas.size());
  parallel_for(sigmas.size(), [&](std::size_t i) {
    per[i] = per_symbol_pullback(symfam, sigmas[i], seeds, sched, metric, opts);
  });
  const auto uni = uniform_omega(symfam, seeds, horizons, metric, opts);

  UnionInclusionReport rep;
  rep.bound = 2.0 * opts.eps_net;
  rep.converged = uni.converged;
  std::vector<CoeffState> all;
  for (const auto& p : per) {
    rep.converged = rep.converged && p.converged;
    all.insert(all.end(), p.points.begin(), p.points.end());
  }
  rep.union_points = all.size();
  rep.uniform_points = uni.points.size();
  if (all.empty() || uni.points.empty()) return rep;
  const auto& space = symfam.family(sigmas.front())->space();
  rep.inclusion = set_semidist(space, all, uni.points, metric);
  rep.reverse = set_semidist(space, uni.points, all, metric);
  if (rep.converged) {
    rep.inclusion_verdict = rep.inclusion <= rep.bound ? Verdict::kHolds : Verdict::kFails;
    rep.equality_verdict = rep.reverse <= rep.bound ? Verdict::kHolds : Verdict::kFails;
  }
  return rep;
}

double shift_identity_check(const SymbolFamily& symfam, std::size_t draws, std::uint64_t seed) {
  const auto& space = symfam.symbols();
  const auto& sigmas = space.symbols();
  const auto xs = symfam.seeds(draws, seed);
  std::vector<double> err(draws, 0.0);
  parallel_for(draws, [&](std::size_t i) {
    SplitMix64 rng(mix_seed(seed, i));
    const double sigma = sigmas[rng.next() % sigmas.size()];
    const double s = rng.uniform(0.0, space.period());
    double r = rng.uniform(-10.0, 0.0);
    double t = rng.uniform(-10.0, 0.0);
    if (t < r) std::swap(t, r);
    const auto lhs = symfam.family(sigma)->evolve_to(r + s, xs[i], t + s);
    const auto rhs = symfam.family(space.shift(s, sigma))->evolve_to(r, xs[i], t);
    err[i] = symfam.family(sigma)->space().strong_dist(lhs, rhs);
  });
  double worst = 0.0;
  for (double e : err) worst = std::max(worst, e);
  return worst;
}

}  // namespace ges
