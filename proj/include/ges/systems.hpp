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
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ges/evolution.hpp"

namespace ges {

/// The l2(Z) unit ball shared by the single-trajectory, bump and branching systems.
DualMetricSpace l2z_space(int truncation = 32);

/// One complete trajectory and its restrictions; P(t, s)X = {u(t)}.
/// The default trajectory rotates, u(t) = (cos t e0 + sin t e1) / 2; the
/// stationary variant u(t) = e0 / 2 is autonomous.
class SingleTrajectorySystem final : public TrajectoryFamily {
 public:
  explicit SingleTrajectorySystem(bool stationary = false);

  const std::string& system_id() const override { return id_; }
  const DualMetricSpace& space() const override { return space_; }
  bool is_autonomous() const override { return stationary_; }
  std::vector<CoeffState> evolve(double s, const CoeffState& x, std::span<const double> ts,
                                 int branch) const override;
  std::vector<CoeffState> sample_phase_space(double t, double s, std::size_t count,
                                             std::uint64_t seed) const override;
  bool has_complete_trajectories() const override { return true; }
  std::vector<CompleteTrajectory> complete_trajectories(double s,
                                                        const CoeffState& x) const override;

  CoeffState trajectory(double t) const;

 private:
  std::string id_ = "single";
  DualMetricSpace space_;
  bool stationary_;
};

/// Unit-norm interpolation between consecutive basis vectors of l2(Z):
/// u(t) = ((1+n-t) e_n + (t-n) e_{n+1}) / norm, n = floor(t). The state at
/// time t of the trajectory shifted by r is u(t - r).
CoeffState bump_state(double r, double t);

/// The traveling bump: all shifts of u and their restrictions.
class BumpSystem final : public TrajectoryFamily {
 public:
  /// `window`: phases covered at the observation time by sample_phase_space.
  explicit BumpSystem(double window = 12.0);

  const std::string& system_id() const override { return id_; }
  const DualMetricSpace& space() const override { return space_; }
  bool is_autonomous() const override { return true; }
  int branch_count(double s, const CoeffState& x) const override;
  std::vector<CoeffState> evolve(double s, const CoeffState& x, std::span<const double> ts,
                                 int branch) const override;
  std::vector<CoeffState> sample_phase_space(double t, double s, std::size_t count,
                                             std::uint64_t seed) const override;
  bool has_complete_trajectories() const override { return true; }
  std::vector<CompleteTrajectory> complete_trajectories(double s,
                                                        const CoeffState& x) const override;

  /// The phase p with u(p) = x, if x lies on the curve.
  std::optional<double> phase_of(const CoeffState& x) const;

 private:
  std::string id_ = "bump";
  DualMetricSpace space_;
  double window_;
};

struct HeatOptions {
  double xi_max = 16.0;
  double spacing = 1.0 / 64.0;
  /// Dyadic levels j used by the random band seeds.
  std::vector<int> seed_levels = {0, 1, 2};
};

struct BandWitness {
  int j = 0;
  /// Unbounded real value of the level bound.
  double bound = 0.0;
  CoeffState f_hat;
};

/// The heat equation on the unit ball of L2(R), solved exactly in Fourier space:
/// u_hat(xi, t) = exp(xi^2 (s - t)) f_hat(xi) on a uniform frequency grid.
class HeatSystem final : public TrajectoryFamily {
 public:
  explicit HeatSystem(HeatOptions opts = {});

  const std::string& system_id() const override { return id_; }
  const DualMetricSpace& space() const override { return space_; }
  bool is_autonomous() const override { return true; }
  std::vector<CoeffState> evolve(double s, const CoeffState& x, std::span<const double> ts,
                                 int branch) const override;
  std::vector<CoeffState> sample_phase_space(double t, double s, std::size_t count,
                                             std::uint64_t seed) const override;
  std::vector<CoeffState> depth_witnesses(double t, double s) const override;
  bool has_complete_trajectories() const override { return true; }
  std::vector<CompleteTrajectory> complete_trajectories(double s,
                                                        const CoeffState& x) const override;
  std::optional<EnergyTerms> energy_terms(double t, const CoeffState& u) const override;

  const QuadratureGrid& grid() const noexcept { return *space_.options().grid; }

  /// The level bound 1/2 (log2(ln 2 / (t - s0)) + 2) below which a dyadic
  /// band seed keeps norm >= 1/2 from s0 to t.
  static double band_level_bound(double t, double s0);

  /// Largest admissible level j and a unit-norm seed supported in the band
  /// 2^{j-1} <= |xi| <= 2^{j+1}, concentrated on its lower edge so that its
  /// norm at t is exp(2^{2j-2} (s0 - t)) >= 1/2. Levels above the grid's top
  /// band are clamped (they still satisfy the bound). Throws
  /// GridResolutionError when the band falls below the grid resolution.
  BandWitness band_witness(double t, double s0) const;

  /// Random unit-norm seed supported in the dyadic band of level j.
  CoeffState random_band_seed(int j, std::uint64_t seed) const;

  /// Unit-norm seed concentrated on the node pair +-xi_m.
  CoeffState node_seed(int m) const;

 private:
  std::string id_ = "heat";
  HeatOptions opts_;
  DualMetricSpace space_;
};

/// The line R with d_s = d_w = |x - y| and trajectories u(t) = t - s for every
/// start s (independently of the initial value).
class LineSystem final : public TrajectoryFamily {
 public:
  LineSystem();

  const std::string& system_id() const override { return id_; }
  const DualMetricSpace& space() const override { return space_; }
  bool is_autonomous() const override { return true; }
  std::vector<CoeffState> evolve(double s, const CoeffState& x, std::span<const double> ts,
                                 int branch) const override;
  std::vector<CoeffState> sample_phase_space(double t, double s, std::size_t count,
                                             std::uint64_t seed) const override;

  static CoeffState point(double x);

 private:
  std::string id_ = "line";
  DualMetricSpace space_;
};

/// Multivalued toy: from x two trajectories x e^{-(t-s)} and x e^{-2(t-s)}.
class BranchingSystem final : public TrajectoryFamily {
 public:
  BranchingSystem();

  const std::string& system_id() const override { return id_; }
  const DualMetricSpace& space() const override { return space_; }
  bool is_autonomous() const override { return true; }
  bool is_multivalued() const override { return true; }
  int branch_count(double, const CoeffState&) const override { return 2; }
  std::vector<CoeffState> evolve(double s, const CoeffState& x, std::span<const double> ts,
                                 int branch) const override;
  std::vector<CoeffState> sample_phase_space(double t, double s, std::size_t count,
                                             std::uint64_t seed) const override;
  bool has_complete_trajectories() const override { return true; }
  std::vector<CompleteTrajectory> complete_trajectories(double s,
                                                        const CoeffState& x) const override;

  static constexpr double rate(int branch) { return branch == 0 ? 1.0 : 2.0; }

 private:
  std::string id_ = "branch2";
  DualMetricSpace space_;
};

/// Random state of the l2(Z) unit ball supported on indices -4..4.
CoeffState random_l2_ball_state(std::uint64_t seed, double max_norm = 1.0);

}  // namespace ges
