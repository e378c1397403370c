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
#include "ges/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <tuple>

#include "ges/errors.hpp"

namespace ges {
namespace {

double norm_sq(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& c : v) s += std::norm(c);
  return s;
}

double diff_norm_sq(std::span<const Complex> a, std::span<const Complex> b) {
  double s = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) s += std::norm(a[c] - b[c]);
  return s;
}

// Calls fn(index, |a_k - b_k|^2) for every index in the union of both supports.
template <typename Fn>
void for_each_union(const CoeffState& a, const CoeffState& b, Fn&& fn) {
  std::size_t i = 0, j = 0;
  const std::size_t na = a.size(), nb = b.size();
  while (i < na || j < nb) {
    if (j == nb || (i < na && index_less(a.index(i), b.index(j)))) {
      fn(a.index(i), norm_sq(a.value(i)));
      ++i;
    } else if (i == na || index_less(b.index(j), a.index(i))) {
      fn(b.index(j), norm_sq(b.value(j)));
      ++j;
    } else {
      fn(a.index(i), diff_norm_sq(a.value(i), b.value(j)));
      ++i;
      ++j;
    }
  }
}

double euclid(const ModeIndex& k, int dim) {
  double s = 0.0;
  for (int d = 0; d < dim; ++d) {
    const double x = k[static_cast<std::size_t>(d)];
    s += x * x;
  }
  return std::sqrt(s);
}

// Sum of base^{-|k|} over |k|_inf > K in three dimensions. Shells up to K + 64
// are enumerated exactly; beyond that each shell m has 24 m^2 + 2 points with
// |k| >= m, which bounds the remainder.
double tail_3d(double base, int radius) {
  static std::mutex mu;
  static std::map<std::pair<double, int>, double> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find({base, radius}); it != cache.end()) return it->second;
  const int outer = radius + 64;
  double sum = 0.0;
  for (int x = -outer; x <= outer; ++x) {
    for (int y = -outer; y <= outer; ++y) {
      for (int z = -outer; z <= outer; ++z) {
        const int m = std::max({std::abs(x), std::abs(y), std::abs(z)});
        if (m <= radius) continue;
        sum += std::pow(base, -std::sqrt(double(x * x + y * y + z * z)));
      }
    }
  }
  for (int m = outer + 1;; ++m) {
    const double term = (24.0 * m * m + 2.0) * std::pow(base, -double(m));
    sum += term;
    if (term < 1e-300 || term < sum * 1e-17) break;
  }
  cache.emplace(std::make_pair(base, radius), sum);
  return sum;
}

}  // namespace

const char* to_string(MetricKind m) noexcept {
  return m == MetricKind::kStrong ? "strong" : "weak";
}

MetricKind metric_from_string(const std::string& s) {
  if (s == "strong") return MetricKind::kStrong;
  if (s == "weak") return MetricKind::kWeak;
  throw UsageError("unknown metric '" + s + "' (expected strong or weak)");
}

double QuadratureGrid::weight(int i) const noexcept {
  const int a = std::abs(i);
  if (a > half_width) return 0.0;
  return a == half_width ? 0.5 * spacing : spacing;
}

DualMetricSpace::DualMetricSpace(Options opts) : opts_(std::move(opts)) {
  if (!(opts_.weight_base > 1.0)) throw UsageError("weight_base must exceed 1");
  if (opts_.index_dim < 1 || opts_.index_dim > 3) throw UsageError("index_dim must be 1..3");
  if (opts_.truncation_radius < 1) throw UsageError("truncation radius must be positive");
  if (opts_.ball_radius && !(*opts_.ball_radius >= 0.0)) {
    throw UsageError("ball radius must be non-negative");
  }
  if (opts_.grid && (opts_.grid->spacing <= 0.0 || opts_.grid->half_width < 1)) {
    throw UsageError("invalid quadrature grid");
  }
  tail_ = compute_tail();
}

double DualMetricSpace::compute_tail() const {
  const double base = opts_.weight_base;
  const int k = opts_.truncation_radius;
  if (opts_.weak_equals_strong) return 0.0;
  if (opts_.index_dim == 3) return tail_3d(base, k);
  if (opts_.index_dim == 2) {
    // Shell m of the square lattice has 8m points with |k| >= m.
    double s = 0.0;
    for (int m = k + 1; m < k + 4000; ++m) s += 8.0 * m * std::pow(base, -double(m));
    return s;
  }
  const double h = opts_.grid ? opts_.grid->spacing : 1.0;
  const double q = opts_.grid ? opts_.grid->spacing : 1.0;
  const double r = std::pow(base, -h);
  return q * 2.0 * std::pow(base, -h * (k + 1)) / (1.0 - r);
}

double DualMetricSpace::quadrature_weight(const ModeIndex& k) const noexcept {
  return opts_.grid ? opts_.grid->weight(k[0]) : 1.0;
}

double DualMetricSpace::weak_weight(const ModeIndex& k) const noexcept {
  const double h = opts_.grid ? opts_.grid->spacing : 1.0;
  return quadrature_weight(k) * std::pow(opts_.weight_base, -h * euclid(k, opts_.index_dim));
}

bool DualMetricSpace::within_truncation(const ModeIndex& k) const noexcept {
  for (int d = 0; d < opts_.index_dim; ++d) {
    if (std::abs(k[static_cast<std::size_t>(d)]) > opts_.truncation_radius) return false;
  }
  return true;
}

void DualMetricSpace::check_pair(const CoeffState& a, const CoeffState& b) const {
  if (a.space() != opts_.space || b.space() != opts_.space) {
    throw UsageError("state space mismatch: '" + a.space() + "' vs '" + b.space() +
                     "' in space '" + opts_.space + "'");
  }
  if (a.components() != b.components() || a.index_dim() != b.index_dim()) {
    throw UsageError("state layouts differ");
  }
}

void DualMetricSpace::check_member(const CoeffState& x) const {
  if (x.space() != opts_.space) throw UsageError("state belongs to space '" + x.space() + "'");
  if (opts_.ball_radius && strong_norm(x) > *opts_.ball_radius + 1e-9) {
    throw UsageError("state lies outside the phase-space ball");
  }
}

double DualMetricSpace::strong_norm(const CoeffState& a) const {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += quadrature_weight(a.index(i)) * norm_sq(a.value(i));
  return std::sqrt(s);
}

double DualMetricSpace::strong_dist(const CoeffState& a, const CoeffState& b) const {
  check_pair(a, b);
  double s = 0.0;
  for_each_union(a, b, [&](const ModeIndex& k, double d2) { s += quadrature_weight(k) * d2; });
  return std::sqrt(s);
}

WeakDistance DualMetricSpace::weak_dist(const CoeffState& a, const CoeffState& b) const {
  if (opts_.weak_equals_strong) return {strong_dist(a, b), 0.0};
  check_pair(a, b);
  double s = 0.0;
  for_each_union(a, b, [&](const ModeIndex& k, double d2) {
    if (d2 == 0.0 || !within_truncation(k)) return;
    const double d = std::sqrt(d2);
    s += weak_weight(k) * d / (1.0 + d);
  });
  return {s, tail_};
}

double DualMetricSpace::dist(MetricKind m, const CoeffState& a, const CoeffState& b) const {
  return m == MetricKind::kStrong ? strong_dist(a, b) : weak_dist(a, b).value;
}

DualMetricSpace DualMetricSpace::with_truncation(int radius) const {
  Options o = opts_;
  o.truncation_radius = radius;
  return DualMetricSpace(std::move(o));
}

double set_semidist(const DualMetricSpace& space, std::span<const CoeffState> a,
                    std::span<const CoeffState> b, MetricKind metric) {
  if (a.empty() || b.empty()) throw UsageError("set_semidist needs nonempty sets");
  double sup = 0.0;
  for (const auto& x : a) {
    double inf = std::numeric_limits<double>::infinity();
    for (const auto& y : b) {
      inf = std::min(inf, space.dist(metric, x, y));
      if (inf <= sup) break;  // cannot raise the supremum any more
    }
    sup = std::max(sup, inf);
  }
  return sup;
}

double hausdorff_dist(const DualMetricSpace& space, std::span<const CoeffState> a,
                      std::span<const CoeffState> b, MetricKind metric) {
  return std::max(set_semidist(space, a, b, metric), set_semidist(space, b, a, metric));
}

std::vector<CoeffState> epsilon_net(const DualMetricSpace& space,
                                    std::span<const CoeffState> points, double eps,
                                    MetricKind metric) {
  if (!(eps > 0.0)) throw UsageError("epsilon_net needs eps > 0");
  std::vector<CoeffState> net;
  for (const auto& p : points) {
    const bool covered = std::any_of(net.begin(), net.end(), [&](const CoeffState& q) {
      return space.dist(metric, p, q) <= eps;
    });
    if (!covered) net.push_back(p);
  }
  return net;
}

}  // namespace ges
