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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ges/coeff_state.hpp"

namespace ges {

enum class MetricKind { kStrong, kWeak };

const char* to_string(MetricKind m) noexcept;
MetricKind metric_from_string(const std::string& s);

/// Uniform frequency grid xi_i = i*h, |i| <= half_width, with trapezoid weights.
struct QuadratureGrid {
  double spacing = 1.0 / 64.0;
  int half_width = 1024;

  double weight(int i) const noexcept;
  double node(int i) const noexcept { return spacing * i; }
};

struct WeakDistance {
  double value = 0.0;
  /// Upper bound on the contribution of indices beyond the truncation radius.
  double tail_bound = 0.0;
};

/// Strong/weak metric pair over coefficient states of one space.
///
/// Strong: sqrt(sum_k w_k |a_k - b_k|^2), w_k the quadrature weights (1 off-grid).
/// Weak:   sum_{|k| <= K} w_k base^{-|k| h} |a_k - b_k| / (1 + |a_k - b_k|),
///         with h the grid spacing (1 off-grid) and |k| the Euclidean norm of
///         the multi-index.
/// With `weak_equals_strong` both metrics are the strong one (the line example).
class DualMetricSpace {
 public:
  struct Options {
    std::string space;
    double weight_base = 2.0;
    int index_dim = 1;
    int components = 1;
    int truncation_radius = 32;
    std::optional<QuadratureGrid> grid;
    std::optional<double> ball_radius;
    bool weak_equals_strong = false;
  };

  explicit DualMetricSpace(Options opts);

  const Options& options() const noexcept { return opts_; }
  const std::string& space() const noexcept { return opts_.space; }

  double strong_norm(const CoeffState& a) const;
  double strong_dist(const CoeffState& a, const CoeffState& b) const;
  WeakDistance weak_dist(const CoeffState& a, const CoeffState& b) const;
  double dist(MetricKind m, const CoeffState& a, const CoeffState& b) const;

  /// Sum over indices beyond the truncation radius of the weak-metric weights.
  double tail_bound() const noexcept { return tail_; }

  /// Same space with a different truncation radius.
  DualMetricSpace with_truncation(int radius) const;

  /// Throws UsageError unless `x` belongs to this space (and ball, when set).
  void check_member(const CoeffState& x) const;

 private:
  void check_pair(const CoeffState& a, const CoeffState& b) const;
  double quadrature_weight(const ModeIndex& k) const noexcept;
  double weak_weight(const ModeIndex& k) const noexcept;
  bool within_truncation(const ModeIndex& k) const noexcept;
  double compute_tail() const;

  Options opts_;
  double tail_ = 0.0;
};

/// Hausdorff semi-distance sup_{a in A} inf_{b in B} d(a, b).
double set_semidist(const DualMetricSpace& space, std::span<const CoeffState> a,
                    std::span<const CoeffState> b, MetricKind metric);

/// Symmetric Hausdorff distance (max of both semi-distances).
double hausdorff_dist(const DualMetricSpace& space, std::span<const CoeffState> a,
                      std::span<const CoeffState> b, MetricKind metric);

/// Greedy first-come eps-net: scans points in input order and keeps a point iff
/// it is farther than eps from every point already kept.
std::vector<CoeffState> epsilon_net(const DualMetricSpace& space,
                                    std::span<const CoeffState> points, double eps,
                                    MetricKind metric);

}  // namespace ges
