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

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ges/evolution.hpp"
#include "ges/ode.hpp"

namespace ges {

/// Scalar time modulation of one forcing mode.
struct TimeProfile {
  enum class Kind { kConst, kSin, kSampled };
  Kind kind = Kind::kConst;
  double omega = 1.0;  // sin: sin(omega t + phase)
  double phase = 0.0;
  std::vector<double> times;   // sampled: piecewise linear, clamped at the ends
  std::vector<double> values;

  double operator()(double t) const;
};

/// One real forcing pair (k, -k). `amp` is the pair amplitude: the stored
/// coefficients are amp/sqrt(2) e at k and its conjugate at -k, so the pair
/// contributes |amp|^2 |time(t)|^2 / |k|^2 to ||g(t)||^2_{V'}.
struct ForcingMode {
  ModeIndex k{};
  Complex amp{1.0, 0.0};
  /// Polarization; projected onto the plane orthogonal to k and normalized.
  std::optional<std::array<double, 3>> direction;
  TimeProfile time;
};

class ForcingProfile {
 public:
  ForcingProfile() = default;
  explicit ForcingProfile(std::vector<ForcingMode> modes, double shift = 0.0);

  /// Parses {"modes": [{"k": [..], "amp": [re, im], "time": {...}}]}; throws ParseError.
  static ForcingProfile from_json_text(const std::string& text);
  std::string to_json_text() const;

  const std::vector<ForcingMode>& modes() const noexcept { return modes_; }
  double shift() const noexcept { return shift_; }

  /// Profile with every time function evaluated at t + sigma.
  ForcingProfile shifted(double sigma) const;
  bool is_time_independent() const;
  bool is_zero() const;

  /// ||g(t)||^2_{V'} = sum_k |g_k(t)|^2 / |k|^2.
  double vprime_norm_sq(double t) const;

  /// Unit polarization of mode i (orthogonal to k).
  std::array<double, 3> polarization(std::size_t i) const;

 private:
  std::vector<ForcingMode> modes_;
  double shift_ = 0.0;
};

/// Sliding-window supremum of int_t^{t+1} ||g||^2_{V'} over start times t in
/// [t_lo, t_hi] (trapezoid quadrature with the given step).
double translational_bound(const ForcingProfile& g, double t_lo, double t_hi, double step);

struct NormalityEntry {
  double eps = 0.0;
  /// Largest window length with every window integral <= eps; empty when not
  /// even one quadrature step qualifies.
  std::optional<double> delta;
  /// True when the window limit itself still qualifies.
  bool unbounded = false;
};

std::vector<NormalityEntry> normality_check(const ForcingProfile& g, std::span<const double> eps,
                                            double t_lo, double t_hi, double step,
                                            double delta_max = 8.0);

/// R = 2 ||g||^2_{L2_b} / (nu (1 - exp(-nu lambda1))).
double absorbing_radius(double l2b_norm_sq, double nu, double lambda1);

/// Time after which every trajectory starting with |u(s)|^2 <= start_norm_sq
/// satisfies |u|^2 <= target_norm_sq by the absorbing inequality; NaN when the
/// target lies below the inequality's asymptotic level.
double absorption_time(double start_norm_sq, double target_norm_sq, double l2b_norm_sq,
                       double nu, double lambda1);

struct ForcingAnalysis {
  double l2b_norm_sq = 0.0;
  double radius = 0.0;
  std::vector<NormalityEntry> normality;
};

ForcingAnalysis analyze_forcing(const ForcingProfile& g, double nu, double lambda1,
                                std::span<const double> eps, double t_lo = -20.0,
                                double t_hi = 20.0, double step = 1.0 / 256.0);

/// How the absorbing radius R defines the phase-space ball X.
enum class BallConvention {
  kRadius,   // X = {|u| <= R}
  kSquared,  // X = {|u|^2 <= R}
};

struct NseOptions {
  int k_max = 4;
  double nu = 1.0;
  ForcingProfile forcing;
  BallConvention convention = BallConvention::kRadius;
  OdeOptions ode{};
  /// Window and step of the translational-bound quadrature.
  double bound_t_lo = -20.0;
  double bound_t_hi = 20.0;
  double bound_step = 1.0 / 256.0;
};

/// Galerkin truncation of the forced 3D Navier-Stokes equations on the 2 pi
/// torus: modes 0 < |k| <= k_max, three complex velocity components per mode,
///   du_k/dt = -nu |k|^2 u_k - Pi_k (i sum_{p+q=k} (u_p . q) u_q) + g_k,
/// with Pi_k = I - k k^T / |k|^2. Norms use the normalized torus measure,
/// |u|^2 = sum_k |u_k|^2.
class NseGalerkin final : public TrajectoryFamily {
 public:
  explicit NseGalerkin(NseOptions opts = {});

  const std::string& system_id() const override { return id_; }
  const DualMetricSpace& space() const override { return space_; }
  bool is_autonomous() const override { return autonomous_; }
  std::vector<CoeffState> evolve(double s, const CoeffState& x, std::span<const double> ts,
                                 int branch) const override;
  std::vector<CoeffState> sample_phase_space(double t, double s, std::size_t count,
                                             std::uint64_t seed) const override;
  double solver_tolerance() const override { return 1e-7; }
  std::optional<EnergyTerms> energy_terms(double t, const CoeffState& u) const override;

  const NseOptions& options() const noexcept { return opts_; }
  const std::vector<ModeIndex>& modes() const noexcept { return modes_; }
  std::size_t triad_count() const noexcept { return tri_p_.size(); }
  double lambda1() const noexcept { return 1.0; }
  double l2b_norm_sq() const noexcept { return l2b_sq_; }
  /// R as defined by the absorbing-ball formula (bounds |u|^2).
  double absorbing_radius() const noexcept { return radius_; }

  /// Right-hand side as a state (the time derivative of u at t).
  CoeffState rhs_state(double t, const CoeffState& u) const;
  /// Re sum_k conj(u_k) . N_k with N = Pi B(u, u); zero by antisymmetry.
  double nonlinear_energy_transfer(const CoeffState& u) const;

  /// Random real divergence-free field with |u| = norm.
  CoeffState random_field(std::uint64_t seed, double norm) const;
  /// Real divergence-free field concentrated on the pair (k, -k).
  CoeffState single_mode_field(const ModeIndex& k, Complex amplitude) const;
  CoeffState forcing_state(double t) const;

  /// max_k |k . u_k| / |k|.
  double divergence_defect(const CoeffState& u) const;
  /// max_k |u_{-k} - conj(u_k)|.
  double reality_defect(const CoeffState& u) const;

  std::vector<double> pack(const CoeffState& u) const;
  CoeffState unpack(std::span<const double> y) const;
  void rhs(double t, std::span<const double> y, std::span<double> dydt) const;

 private:
  std::size_t mode_of(const ModeIndex& k) const;

  std::string id_ = "nse";
  NseOptions opts_;
  DualMetricSpace space_;
  std::vector<ModeIndex> modes_;
  std::vector<double> ksq_;
  std::vector<std::size_t> neg_;  // index of -k
  // Triads grouped by output mode: [tri_begin_[k], tri_begin_[k+1]).
  std::vector<std::size_t> tri_begin_;
  std::vector<std::uint32_t> tri_p_, tri_q_;
  // Forcing polarizations mapped onto modes.
  struct ModeForcing {
    std::size_t mode;
    std::size_t forcing_index;
    std::array<Complex, 3> coeff;
  };
  std::vector<ModeForcing> forcing_map_;
  bool autonomous_ = true;
  double l2b_sq_ = 0.0;
  double radius_ = 0.0;
};

}  // namespace ges
