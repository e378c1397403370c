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
#include "ges/systems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ges/errors.hpp"
#include "ges/random.hpp"

namespace ges {

DualMetricSpace l2z_space(int truncation) {
  DualMetricSpace::Options o;
  o.space = "l2z";
  o.truncation_radius = truncation;
  o.ball_radius = 1.0;
  return DualMetricSpace(o);
}

CoeffState random_l2_ball_state(std::uint64_t seed, double max_norm) {
  SplitMix64 rng(seed);
  std::vector<int> idx;
  std::vector<Complex> val;
  double n2 = 0.0;
  for (int k = -4; k <= 4; ++k) {
    const double v = rng.normal();
    idx.push_back(k);
    val.emplace_back(v, 0.0);
    n2 += v * v;
  }
  const double scale = max_norm * rng.uniform() / std::sqrt(n2);
  for (auto& v : val) v *= scale;
  return CoeffState::scalar("l2z", std::move(idx), std::move(val));
}

namespace {

void check_times(double s, std::span<const double> ts) {
  for (double t : ts) {
    if (t < s) throw UsageError("sample times must not precede the start time");
  }
}

}  // namespace

// ---------------------------------------------------------------------------

SingleTrajectorySystem::SingleTrajectorySystem(bool stationary)
    : space_(l2z_space()), stationary_(stationary) {}

CoeffState SingleTrajectorySystem::trajectory(double t) const {
  if (stationary_) return CoeffState::scalar("l2z", {0}, {0.5});
  return CoeffState::scalar("l2z", {0, 1}, {0.5 * std::cos(t), 0.5 * std::sin(t)});
}

std::vector<CoeffState> SingleTrajectorySystem::evolve(double s, const CoeffState&,
                                                       std::span<const double> ts,
                                                       int branch) const {
  if (branch != 0) throw UsageError("single-trajectory system has one branch");
  check_times(s, ts);
  std::vector<CoeffState> out;
  out.reserve(ts.size());
  for (double t : ts) out.push_back(trajectory(t));
  return out;
}

std::vector<CoeffState> SingleTrajectorySystem::sample_phase_space(double, double,
                                                                   std::size_t count,
                                                                   std::uint64_t seed) const {
  std::vector<CoeffState> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_l2_ball_state(mix_seed(seed, i)));
  return out;
}

std::vector<CompleteTrajectory> SingleTrajectorySystem::complete_trajectories(
    double, const CoeffState&) const {
  return {{"u", [this](double t) { return trajectory(t); }}};
}

// ---------------------------------------------------------------------------

CoeffState bump_state(double r, double t) {
  const double p = t - r;
  const double n = std::floor(p);
  const double theta = p - n;
  const int ni = static_cast<int>(n);
  if (theta == 0.0) return CoeffState::scalar("l2z", {ni}, {1.0});
  const double a = 1.0 - theta, b = theta;
  const double norm = std::hypot(a, b);
  return CoeffState::scalar("l2z", {ni, ni + 1}, {a / norm, b / norm});
}

BumpSystem::BumpSystem(double window) : space_(l2z_space()), window_(window) {
  if (!(window > 0.0)) throw UsageError("bump window must be positive");
}

std::optional<double> BumpSystem::phase_of(const CoeffState& x) const {
  if (x.space() != "l2z" || x.components() != 1) return std::nullopt;
  std::vector<std::pair<int, double>> nz;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Complex v = x.value(i)[0];
    if (std::abs(v) == 0.0) continue;
    if (std::abs(v.imag()) > 1e-12 || v.real() < 0.0) return std::nullopt;
    nz.emplace_back(x.index(i)[0], v.real());
  }
  if (nz.empty() || nz.size() > 2) return std::nullopt;
  double n2 = 0.0;
  for (auto& [k, v] : nz) n2 += v * v;
  if (std::abs(n2 - 1.0) > 1e-9) return std::nullopt;
  if (nz.size() == 1) return static_cast<double>(nz[0].first);
  if (nz[1].first != nz[0].first + 1) return std::nullopt;
  const double a = nz[0].second, b = nz[1].second;
  return static_cast<double>(nz[0].first) + b / (a + b);
}

int BumpSystem::branch_count(double, const CoeffState& x) const {
  return phase_of(x) ? 1 : 0;
}

std::vector<CoeffState> BumpSystem::evolve(double s, const CoeffState& x,
                                           std::span<const double> ts, int branch) const {
  if (branch != 0) throw UsageError("bump system has one branch per state");
  check_times(s, ts);
  const auto p = phase_of(x);
  if (!p) throw UsageError("no bump trajectory passes through the given state");
  std::vector<CoeffState> out;
  out.reserve(ts.size());
  for (double t : ts) out.push_back(bump_state(0.0, *p + (t - s)));
  return out;
}

std::vector<CoeffState> BumpSystem::sample_phase_space(double t, double s, std::size_t count,
                                                       std::uint64_t) const {
  // Phases spread evenly over [-window, window] at the observation time.
  std::vector<CoeffState> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double q = count == 1 ? 0.0
                                : -window_ + 2.0 * window_ * static_cast<double>(i) /
                                                 static_cast<double>(count - 1);
    out.push_back(bump_state(0.0, q - (t - s)));
  }
  return out;
}

std::vector<CompleteTrajectory> BumpSystem::complete_trajectories(double s,
                                                                  const CoeffState& x) const {
  const auto p = phase_of(x);
  if (!p) return {};
  const double shift = s - *p;  // v(t) = u(t - shift) passes through x at s
  return {{"u(. - " + std::to_string(shift) + ")",
           [shift](double t) { return bump_state(shift, t); }}};
}

// ---------------------------------------------------------------------------

namespace {

DualMetricSpace heat_space(const HeatOptions& o) {
  if (!(o.spacing > 0.0) || !(o.xi_max > o.spacing)) throw UsageError("invalid heat grid");
  DualMetricSpace::Options so;
  so.space = "heat";
  so.grid = QuadratureGrid{o.spacing, static_cast<int>(std::llround(o.xi_max / o.spacing))};
  so.truncation_radius = so.grid->half_width;
  so.ball_radius = 1.0;
  return DualMetricSpace(so);
}

}  // namespace

HeatSystem::HeatSystem(HeatOptions opts) : opts_(std::move(opts)), space_(heat_space(opts_)) {}

std::vector<CoeffState> HeatSystem::evolve(double s, const CoeffState& x,
                                           std::span<const double> ts, int branch) const {
  if (branch != 0) throw UsageError("heat system is single-valued");
  if (x.space() != "heat") throw UsageError("state does not belong to the heat grid");
  check_times(s, ts);
  const auto& g = grid();
  std::vector<CoeffState> out;
  out.reserve(ts.size());
  std::vector<Complex> vals(x.values().size());
  for (double t : ts) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double xi = g.node(x.index(i)[0]);
      vals[i] = x.value(i)[0] * std::exp(xi * xi * (s - t));
    }
    out.emplace_back("heat", 1, 1, x.indices(), vals);
  }
  return out;
}

CoeffState HeatSystem::random_band_seed(int j, std::uint64_t seed) const {
  const auto& g = grid();
  const double lo = std::ldexp(1.0, j - 1), hi = std::ldexp(1.0, j + 1);
  if (hi > opts_.xi_max) throw GridResolutionError("band level above the frequency grid");
  const int mlo = static_cast<int>(std::ceil(lo / g.spacing - 1e-9));
  const int mhi = static_cast<int>(std::floor(hi / g.spacing + 1e-9));
  if (mlo < 1 || mhi - mlo < 2) {
    throw GridResolutionError("band level below the grid resolution; refine the grid");
  }
  SplitMix64 rng(seed);
  std::vector<int> idx;
  std::vector<Complex> val;
  double n2 = 0.0;
  for (int sign : {-1, 1}) {
    for (int m = mlo; m <= mhi; ++m) {
      const Complex v(rng.normal(), rng.normal());
      idx.push_back(sign * m);
      val.push_back(v);
      n2 += g.weight(m) * std::norm(v);
    }
  }
  const double scale = 1.0 / std::sqrt(n2);
  for (auto& v : val) v *= scale;
  return CoeffState::scalar("heat", std::move(idx), std::move(val));
}

CoeffState HeatSystem::node_seed(int m) const {
  const auto& g = grid();
  if (m < 1 || m >= g.half_width) throw GridResolutionError("node outside the frequency grid");
  const double c = 1.0 / std::sqrt(2.0 * g.weight(m));
  return CoeffState::scalar("heat", {-m, m}, {c, c});
}

double HeatSystem::band_level_bound(double t, double s0) {
  if (!(s0 < t)) return std::numeric_limits<double>::infinity();
  return 0.5 * (std::log2(std::numbers::ln2 / (t - s0)) + 2.0);
}

BandWitness HeatSystem::band_witness(double t, double s0) const {
  if (!(s0 < t)) throw UsageError("band witness needs s0 < t");
  const auto& g = grid();
  const double bound = band_level_bound(t, s0);
  const int top = static_cast<int>(std::floor(std::log2(opts_.xi_max))) - 1;
  const int j = std::min(static_cast<int>(std::floor(bound)), top);
  const double edge = std::ldexp(1.0, j - 1);
  if (edge < 4.0 * g.spacing) {
    throw GridResolutionError("band level j=" + std::to_string(j) +
                              " is below the grid resolution; use a finer frequency grid");
  }
  const int m = static_cast<int>(std::ceil(edge / g.spacing - 1e-9));
  return {j, bound, node_seed(m)};
}

std::vector<CoeffState> HeatSystem::sample_phase_space(double, double, std::size_t count,
                                                       std::uint64_t seed) const {
  std::vector<CoeffState> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const int j = opts_.seed_levels[i % opts_.seed_levels.size()];
    out.push_back(random_band_seed(j, mix_seed(seed, i)));
  }
  return out;
}

std::vector<CoeffState> HeatSystem::depth_witnesses(double t, double s) const {
  // Node pairs +-xi_m with xi_m^2 (t - s) <= ln 2 keep norm >= 1/2 at t.
  const auto& g = grid();
  const double depth = t - s;
  int mmax = g.half_width - 1;
  if (depth > 0.0) {
    mmax = std::min(mmax, static_cast<int>(std::floor(
                              std::sqrt(std::numbers::ln2 / depth) / g.spacing + 1e-12)));
  }
  if (mmax < 1) {
    throw GridResolutionError("pullback depth " + std::to_string(depth) +
                              " exceeds what the frequency grid resolves; refine the grid");
  }
  std::vector<CoeffState> out;
  for (int m = mmax; m >= std::max(1, mmax - 23); --m) out.push_back(node_seed(m));
  return out;
}

std::vector<CompleteTrajectory> HeatSystem::complete_trajectories(double,
                                                                  const CoeffState&) const {
  return {{"zero", [](double) { return CoeffState::zero("heat", 1, 1); }}};
}

std::optional<EnergyTerms> HeatSystem::energy_terms(double, const CoeffState& u) const {
  const auto& g = grid();
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const int k = u.index(i)[0];
    const double xi = g.node(k);
    d += g.weight(k) * xi * xi * std::norm(u.value(i)[0]);
  }
  return EnergyTerms{d, 0.0};
}

// ---------------------------------------------------------------------------

LineSystem::LineSystem()
    : space_([] {
        DualMetricSpace::Options o;
        o.space = "line";
        o.weak_equals_strong = true;
        return DualMetricSpace(o);
      }()) {}

CoeffState LineSystem::point(double x) { return CoeffState::scalar("line", {0}, {x}); }

std::vector<CoeffState> LineSystem::evolve(double s, const CoeffState&,
                                           std::span<const double> ts, int branch) const {
  if (branch != 0) throw UsageError("line system has one branch");
  check_times(s, ts);
  std::vector<CoeffState> out;
  out.reserve(ts.size());
  for (double t : ts) out.push_back(point(t - s));
  return out;
}

std::vector<CoeffState> LineSystem::sample_phase_space(double, double, std::size_t count,
                                                       std::uint64_t seed) const {
  SplitMix64 rng(seed);
  std::vector<CoeffState> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(point(rng.uniform(-10.0, 10.0)));
  return out;
}

// ---------------------------------------------------------------------------

BranchingSystem::BranchingSystem() : space_(l2z_space()) {}

std::vector<CoeffState> BranchingSystem::evolve(double s, const CoeffState& x,
                                                std::span<const double> ts, int branch) const {
  if (branch != 0 && branch != 1) throw UsageError("branching system has branches 0 and 1");
  check_times(s, ts);
  std::vector<CoeffState> out;
  out.reserve(ts.size());
  for (double t : ts) out.push_back(x.scaled(std::exp(-rate(branch) * (t - s))));
  return out;
}

std::vector<CoeffState> BranchingSystem::sample_phase_space(double, double, std::size_t count,
                                                            std::uint64_t seed) const {
  std::vector<CoeffState> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_l2_ball_state(mix_seed(seed, i)));
  return out;
}

std::vector<CompleteTrajectory> BranchingSystem::complete_trajectories(
    double, const CoeffState&) const {
  return {{"zero", [](double) { return CoeffState::zero("l2z", 1, 1); }}};
}

}  // namespace ges
