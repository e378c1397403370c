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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ges/evolution.hpp"

namespace ges {

/// Start times s_1 > s_2 > ... > s_N (s_1 <= t) approaching minus infinity.
struct PullbackSchedule {
  enum class Mode { kLinear, kGeometric, kExplicit };

  double t = 0.0;
  std::vector<double> starts;
  Mode mode = Mode::kGeometric;
  double delta = 1.0;
  double ratio = 1.6;

  /// s_i = t - delta * ratio^i, i = 0..n-1.
  static PullbackSchedule geometric(double t, double delta = 1.0, double ratio = 1.6, int n = 16);
  /// s_i = t - delta * i, i = 1..n.
  static PullbackSchedule linear(double t, double delta, int n);
  static PullbackSchedule from_starts(double t, std::vector<double> starts);

  /// Throws UsageError unless N >= 3, starts strictly decrease and s_1 <= t.
  void validate() const;
};

std::string to_string(PullbackSchedule::Mode m);

struct ProfilePoint {
  double s = 0.0;
  double semidist = 0.0;
};

struct OmegaOptions {
  double eps_net = 0.02;
  double tol = 1e-3;
  BranchSelection branches = BranchSelection::kAll;
};

/// Finite approximation of the pullback omega-limit at time t.
struct OmegaApprox {
  enum class Status { kConverged, kNotConverged, kNoConvergence };

  std::string system;
  double t = 0.0;
  MetricKind metric = MetricKind::kWeak;
  std::vector<CoeffState> points;
  double eps_net = 0.0;
  double tol = 0.0;
  /// One entry per schedule start (or horizon for forward limits).
  std::vector<ProfilePoint> profile;
  bool converged = false;
  Status status = Status::kNotConverged;
  /// semidist(image_i, image_{i-1}) per tier (first entry 0); filled only
  /// when no candidate survives.
  std::vector<double> tier_drift;
  /// True for forward limits, whose profile keys are horizons.
  bool forward = false;
};

std::string to_string(OmegaApprox::Status s);

/// Images P(t, s_i)A per tier (A drawn from `seeds` at each (t, s_i)).
std::vector<std::vector<CoeffState>> tier_images(const TrajectoryFamily& fam,
                                                 const SeedSource& seeds,
                                                 const PullbackSchedule& sched,
                                                 BranchSelection branches);

/// Tier survival over precomputed images (tier i keyed by keys[i]).
OmegaApprox omega_from_images(const DualMetricSpace& space,
                              const std::vector<std::vector<CoeffState>>& images,
                              std::span<const double> keys, MetricKind metric,
                              const OmegaOptions& opts);

/// Pullback omega-limit by tier survival: candidates are the images of the
/// deepest third of the tiers; a candidate survives iff it lies within eps_net
/// of every such tier image; points are an eps-net of the survivors (deepest
/// first). An empty survivor set yields Status::kNoConvergence. Converged iff
/// the last profile value is <= tol + eps_net and the profile is
/// non-increasing over its last third.
OmegaApprox omega_pullback(const TrajectoryFamily& fam, const SeedSource& seeds,
                           const PullbackSchedule& sched, MetricKind metric,
                           const OmegaOptions& opts = {});

/// The same construction over forward images R(t_n)A = P(t_n, 0)A for
/// ascending horizons. Throws UsageError on a nonautonomous family.
OmegaApprox forward_omega(const TrajectoryFamily& fam, const SeedSource& seeds,
                          std::span<const double> horizons, MetricKind metric,
                          const OmegaOptions& opts = {});

/// Ascending horizons matching a pullback schedule's depths t - s_i.
std::vector<double> horizons_of(const PullbackSchedule& sched);

enum class Verdict { kHolds, kFails, kInconclusive };

struct AttractionReport {
  std::vector<ProfilePoint> profile;
  /// kHolds = attracts.
  Verdict verdict = Verdict::kInconclusive;
  double tol = 0.0;
};

std::string attraction_label(Verdict v);

/// Profile semidist(P(t, s_i)A, candidate). Attracts iff the last value is
/// <= tol and the profile is non-increasing over its last half; fails iff the
/// last half stays >= 2 tol.
AttractionReport attraction_diagnostic(const TrajectoryFamily& fam,
                                       std::span<const CoeffState> candidate,
                                       const SeedSource& seeds, const PullbackSchedule& sched,
                                       MetricKind metric, double tol);

struct MinimalityReport {
  /// semidist(omega points, candidate).
  double inclusion = 0.0;
  /// Candidate indices farther than 2 eps_net from the omega points.
  std::vector<std::size_t> excess;
  bool minimal = false;
  Verdict verdict = Verdict::kInconclusive;
};

MinimalityReport minimality_check(const OmegaApprox& omega, std::span<const CoeffState> candidate,
                                  const DualMetricSpace& space, double tol);

MinimalityReport minimality_check(const TrajectoryFamily& fam,
                                  std::span<const CoeffState> candidate, const SeedSource& seeds,
                                  const PullbackSchedule& sched, MetricKind metric,
                                  const OmegaOptions& opts = {});

struct PacReport {
  /// kHolds = PAC-consistent, kFails = PAC-violated.
  Verdict verdict = Verdict::kInconclusive;
  std::size_t sequence_length = 0;
  /// Length of the longest prefix-free run of pairwise > 2 tol separated draws.
  std::size_t separated_length = 0;
  /// Length of the greedy strong Cauchy subsequence at resolution tol.
  std::size_t cauchy_length = 0;
  double min_separation = 0.0;
};

std::string pac_label(Verdict v);

/// Draws x_n in P(t, s_n)X adversarially (farthest from earlier draws, strong
/// metric). Violated iff at least 10 draws are pairwise more than 2 tol apart.
PacReport pac_check(const TrajectoryFamily& fam, const PullbackSchedule& sched,
                    std::size_t sample_size, double tol, std::uint64_t seed = 0);

enum class InvarianceKind { kSemi, kQuasi, kFull };

std::string to_string(InvarianceKind k);
InvarianceKind invariance_from_string(const std::string& s);

using SetFamily = std::function<std::vector<CoeffState>(double t)>;

struct InvarianceOptions {
  double tol = 0.05;
  MetricKind metric = MetricKind::kWeak;
  std::size_t grid_points = 4;
  /// Quasi search: pullback depth below t_min and ensemble size.
  double search_depth = 32.0;
  std::size_t search_seeds = 64;
  std::uint64_t seed = 0;
};

struct InvarianceReport {
  Verdict verdict = Verdict::kInconclusive;
  std::optional<Verdict> semi;
  std::optional<Verdict> quasi;
  double semi_worst = 0.0;
  /// Points of B(t) with no matching ensemble entry.
  std::size_t unmatched = 0;
};

std::string invariance_label(InvarianceKind k, Verdict v);

InvarianceReport invariance_check(const TrajectoryFamily& fam, const SetFamily& sets,
                                  InvarianceKind kind, double t_min, double t_max,
                                  const InvarianceOptions& opts = {});

struct TrackingOptions {
  std::size_t seeds = 16;
  double step = 0.25;
  bool strong = false;
  std::uint64_t seed = 0;
};

struct TrackingReport {
  Verdict verdict = Verdict::kInconclusive;
  /// Largest over sampled trajectories of the best-match sup distance.
  double worst_weak = 0.0;
  double worst_strong = 0.0;
  std::size_t trajectories = 0;
  std::size_t unmatched = 0;
};

/// For trajectories started at each schedule start s', searches the system's
/// complete trajectories for one within eps over the window [t - T, t].
/// Throws UnsupportedError when the system registers no complete trajectories.
TrackingReport tracking_check(const TrajectoryFamily& fam, double t, double T, double eps,
                              const PullbackSchedule& sched, const TrackingOptions& opts = {});

}  // namespace ges
