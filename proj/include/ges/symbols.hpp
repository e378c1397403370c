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
#include <numbers>
#include <string>
#include <vector>

#include "ges/nse.hpp"
#include "ges/omega.hpp"

namespace ges {

/// A finite sample of a symbol space of periodic phases with the shift
/// T(s) sigma = (sigma + s) mod period.
class SymbolSpace {
 public:
  /// `count` phases 2 pi i / count (scaled to the period).
  static SymbolSpace phases(std::size_t count, double period = 2.0 * std::numbers::pi);

  const std::vector<double>& symbols() const noexcept { return symbols_; }
  double period() const noexcept { return period_; }
  const std::string& closure_note() const noexcept { return note_; }

  /// Throws UsageError for s < 0.
  double shift(double s, double sigma) const;

 private:
  std::vector<double> symbols_;
  double period_ = 0.0;
  std::string note_;
};

/// sigma -> the generalized evolutionary system driven by sigma.
class SymbolFamily {
 public:
  virtual ~SymbolFamily() = default;

  virtual const std::string& name() const = 0;
  virtual const SymbolSpace& symbols() const = 0;
  /// The system for an arbitrary phase (not only sampled ones).
  virtual std::shared_ptr<const TrajectoryFamily> family(double sigma) const = 0;
  /// Common seed set A in the shared phase space.
  virtual std::vector<CoeffState> seeds(std::size_t count, std::uint64_t seed) const;
};

/// u' = -u + cos(t + sigma) on R, with the closed-form solution
/// u(t) = (u0 - p(s)) e^{-(t-s)} + p(t), p(t) = (cos(t+sigma) + sin(t+sigma)) / 2.
class ForcedScalarSystem final : public TrajectoryFamily {
 public:
  explicit ForcedScalarSystem(double sigma = 0.0);

  const std::string& system_id() const override { return id_; }
  const DualMetricSpace& space() const override { return space_; }
  bool is_autonomous() const override { return false; }
  std::vector<CoeffState> evolve(double s, const CoeffState& x, std::span<const double> ts,
                                 int branch) const override;
  std::vector<CoeffState> sample_phase_space(double t, double s, std::size_t count,
                                             std::uint64_t seed) const override;
  bool has_complete_trajectories() const override { return true; }
  std::vector<CompleteTrajectory> complete_trajectories(double s,
                                                        const CoeffState& x) const override;

  double sigma() const noexcept { return sigma_; }
  /// The periodic orbit p(t).
  double orbit(double t) const;
  static CoeffState point(double u);
  static double value(const CoeffState& x);

 private:
  std::string id_ = "forced-scalar";
  DualMetricSpace space_;
  double sigma_;
};

class ForcedScalarFamily final : public SymbolFamily {
 public:
  explicit ForcedScalarFamily(std::size_t count = 32);

  const std::string& name() const override { return name_; }
  const SymbolSpace& symbols() const override { return symbols_; }
  std::shared_ptr<const TrajectoryFamily> family(double sigma) const override;

 private:
  std::string name_ = "forced-scalar";
  SymbolSpace symbols_;
};

/// Every symbol drives the same autonomous system.
class AutonomousSymbolFamily final : public SymbolFamily {
 public:
  AutonomousSymbolFamily(std::shared_ptr<const TrajectoryFamily> fam, std::size_t count = 32);

  const std::string& name() const override { return fam_->system_id(); }
  const SymbolSpace& symbols() const override { return symbols_; }
  std::shared_ptr<const TrajectoryFamily> family(double) const override { return fam_; }

 private:
  std::shared_ptr<const TrajectoryFamily> fam_;
  SymbolSpace symbols_;
};

/// Galerkin NSE whose forcing is shifted by the phase; the base forcing should
/// be periodic with the symbol period.
class NseSymbolFamily final : public SymbolFamily {
 public:
  NseSymbolFamily(NseOptions base, std::size_t count = 32);

  const std::string& name() const override { return name_; }
  const SymbolSpace& symbols() const override { return symbols_; }
  std::shared_ptr<const TrajectoryFamily> family(double sigma) const override;
  std::vector<CoeffState> seeds(std::size_t count, std::uint64_t seed) const override;

 private:
  std::string name_ = "nse";
  NseOptions base_;
  SymbolSpace symbols_;
  std::vector<std::shared_ptr<const NseGalerkin>> sampled_;
};

/// Forward omega over the union of symbols: tiers R_Sigma(h)A = U_sigma R_sigma(h, 0)A.
OmegaApprox uniform_omega(const SymbolFamily& symfam, std::span<const CoeffState> seeds,
                          std::span<const double> horizons, MetricKind metric,
                          const OmegaOptions& opts = {});

/// Horizons h_i = h_0 + i * step aligned to the symbol sample, so that the
/// shifted sample T(h)Sigma coincides with Sigma.
std::vector<double> aligned_horizons(const SymbolSpace& space, double min_horizon,
                                     std::size_t count, std::size_t stride = 1);

OmegaApprox per_symbol_pullback(const SymbolFamily& symfam, double sigma,
                                std::span<const CoeffState> seeds, const PullbackSchedule& sched,
                                MetricKind metric, const OmegaOptions& opts = {});

struct UnionInclusionReport {
  /// semidist(U_sigma per-symbol points, uniform points).
  double inclusion = 0.0;
  /// semidist(uniform points, U_sigma per-symbol points); equality is
  /// conditional on closedness, which a finite sample cannot verify.
  double reverse = 0.0;
  double bound = 0.0;
  bool converged = false;
  Verdict inclusion_verdict = Verdict::kInconclusive;
  Verdict equality_verdict = Verdict::kInconclusive;
  std::size_t union_points = 0;
  std::size_t uniform_points = 0;
};

UnionInclusionReport union_inclusion_check(const SymbolFamily& symfam,
                                           std::span<const CoeffState> seeds,
                                           const PullbackSchedule& sched,
                                           std::span<const double> horizons, MetricKind metric,
                                           const OmegaOptions& opts = {});

/// max over random draws of d_s(R_sigma(t+s, r+s)x, R_{T(s)sigma}(t, r)x).
double shift_identity_check(const SymbolFamily& symfam, std::size_t draws, std::uint64_t seed);

}  // namespace ges
