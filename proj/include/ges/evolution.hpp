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

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ges/coeff_state.hpp"
#include "ges/metric.hpp"

namespace ges {

/// A complete trajectory v defined for all times.
struct CompleteTrajectory {
  std::string label;
  std::function<CoeffState(double)> at;
};

/// Integrands of the integral energy inequality
///   |u(t)|^2 + 2 int dissipation <= |u(t0)|^2 + 2 int forcing_work.
struct EnergyTerms {
  double dissipation = 0.0;   // nu ||u||^2
  double forcing_work = 0.0;  // <g, u>
};

/// A generalized evolutionary system: for every start time s and state x it
/// yields the trajectories of E([s, inf)) passing through x at s, one per
/// branch. Implementations are immutable after construction and safe to call
/// concurrently.
class TrajectoryFamily {
 public:
  virtual ~TrajectoryFamily() = default;

  virtual const std::string& system_id() const = 0;
  virtual const DualMetricSpace& space() const = 0;
  virtual bool is_autonomous() const = 0;
  virtual bool is_multivalued() const { return false; }

  /// Number of trajectories through (s, x); 0 when none passes through x.
  virtual int branch_count(double /*s*/, const CoeffState& /*x*/) const { return 1; }

  /// The branch-th trajectory through (s, x), sampled at ascending ts >= s.
  virtual std::vector<CoeffState> evolve(double s, const CoeffState& x,
                                         std::span<const double> ts, int branch) const = 0;

  /// A deterministic finite sample of the phase space used as seeds at start
  /// time s. Systems whose images P(t,s)X move with s (the traveling bump)
  /// position the sample so that its image at t covers the relevant window.
  virtual std::vector<CoeffState> sample_phase_space(double t, double s, std::size_t count,
                                                     std::uint64_t seed) const = 0;

  /// Extra seeds at start s whose images at t stay away from the attractor
  /// candidate (empty unless the system has a non-uniformity construction).
  virtual std::vector<CoeffState> depth_witnesses(double /*t*/, double /*s*/) const {
    return {};
  }

  virtual bool has_complete_trajectories() const { return false; }

  /// Candidate complete trajectories for matching a trajectory that passes
  /// through x at time s.
  virtual std::vector<CompleteTrajectory> complete_trajectories(double /*s*/,
                                                                const CoeffState& /*x*/) const {
    return {};
  }

  /// Expected accuracy of evolve (0 for closed-form systems up to rounding).
  virtual double solver_tolerance() const { return 1e-12; }

  virtual std::optional<EnergyTerms> energy_terms(double /*t*/, const CoeffState& /*u*/) const {
    return std::nullopt;
  }

  /// Convenience: the state at a single time t >= s.
  CoeffState evolve_to(double s, const CoeffState& x, double t, int branch = 0) const;
};

/// Seeds A for pullback runs, possibly depending on the (t, s) pair.
class SeedSource {
 public:
  using Fn = std::function<std::vector<CoeffState>(double t, double s)>;

  /// The same finite set A at every start time.
  static SeedSource fixed(std::vector<CoeffState> seeds);

  /// A sample of the whole phase space X, optionally augmented by the
  /// system's depth witnesses.
  static SeedSource phase_space(const TrajectoryFamily& fam, std::size_t count,
                                std::uint64_t seed, bool with_witnesses = false);

  explicit SeedSource(Fn fn) : fn_(std::move(fn)) {}

  std::vector<CoeffState> at(double t, double s) const { return fn_(t, s); }

 private:
  Fn fn_;
};

enum class BranchSelection { kAll, kFirst };

struct EnsembleEntry {
  double start = 0.0;
  std::size_t seed_index = 0;
  int branch = 0;
  CoeffState seed;
  CoeffState state;
};

/// Finite approximation of P(t, s)A with provenance.
struct PullbackEnsemble {
  double t = 0.0;
  std::vector<EnsembleEntry> entries;

  std::vector<CoeffState> states() const;
};

/// P(t, s)A: evolves every seed (and selected branch) from s to t.
/// Throws DivergenceError naming the seed when a state exceeds 10x the ball radius.
PullbackEnsemble pullback_image(const TrajectoryFamily& fam, std::span<const CoeffState> seeds,
                                double t, double s,
                                BranchSelection branches = BranchSelection::kAll);

/// Strong semi-distance from P(t,r)A to P(t,s)P(s,r)A; zero for an exact system.
double compose_check(const TrajectoryFamily& fam, std::span<const CoeffState> seeds, double r,
                     double s, double t);

/// A trajectory sampled on an ascending time grid.
struct SampledTrajectory {
  std::vector<double> times;
  std::vector<CoeffState> states;
};

SampledTrajectory sample_trajectory(const TrajectoryFamily& fam, double s, const CoeffState& x,
                                    double horizon, double step, int branch = 0);

struct EnergyViolation {
  double t0 = 0.0;
  double t = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
};

struct EnergyCheckReport {
  std::vector<EnergyViolation> violations;
  /// Largest residual over every tested pair (pointwise and integral forms).
  double max_residual = 0.0;
  double epsilon_used = 0.0;
  double delta_used = 0.0;
  /// Integral-form residual (NaN when the system exposes no energy terms).
  double integral_max_residual = 0.0;
  /// Largest integral-form residual divided by the pair's time span.
  double integral_residual_rate = 0.0;
  /// Largest |residual| per unit time: |residual| / max(1, span).
  double integral_balance_rate = 0.0;
  /// Richardson estimate of the trapezoid quadrature error.
  double quadrature_error = 0.0;
  bool has_integral_form = false;
};

struct EnergyCheckOptions {
  double fraction = 0.9;       // "a.e." surrogate: share of grid t0 that must pass
  double tolerance = 0.0;      // pointwise residual above this is a violation
  std::size_t max_anchors = 64;  // integral-form start times tested
};

/// Pointwise energy inequality |u(t)| <= |u(t0)| + eps for most grid t0 in
/// (t - delta, t), plus the integral energy inequality when available.
/// Throws UsageError when the grid spacing is not below delta / 4.
EnergyCheckReport energy_inequality_check(const TrajectoryFamily& fam,
                                          const SampledTrajectory& u, double eps, double delta,
                                          const EnergyCheckOptions& opts = {});

struct ConvergenceReport {
  /// sup over the horizon of the weak distance between the last approximant
  /// trajectory and the limit trajectory.
  double weak_sup = 0.0;
  /// Share of grid times where the strong distances decrease along the sequence.
  double strong_fraction = 0.0;
};

/// Evolves seeds x_1..x_n and the limit x (the last entry of `seeds`) from s on
/// a grid over [s, s + horizon].
ConvergenceReport weak_c_convergence_check(const TrajectoryFamily& fam,
                                           std::span<const CoeffState> seeds, double s,
                                           double horizon, double step = 0.05);

}  // namespace ges
