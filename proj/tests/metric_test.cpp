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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "ges/errors.hpp"
#include "ges/random.hpp"
#include "ges/registry.hpp"
#include "ges/systems.hpp"

namespace ges {
namespace {

CoeffState s(std::vector<int> idx, std::vector<double> v) {
  std::vector<Complex> c(v.begin(), v.end());
  return CoeffState::scalar("l2z", std::move(idx), std::move(c));
}

DualMetricSpace plain(int K = 8) {
  DualMetricSpace::Options o;
  o.space = "l2z";
  o.truncation_radius = K;
  return DualMetricSpace(o);
}

// Oracle: weak = sum_{|k|<=K} 2^{-|k|} d/(1+d), strong = l2 norm.
TEST(Metric, HandComputedValues) {
  const auto sp = plain();
  const auto a = s({0, 2}, {1.0, 0.5});
  const auto b = s({-1, 2}, {2.0, -0.5});
  const double strong = std::sqrt(1.0 + 4.0 + 1.0);
  EXPECT_NEAR(sp.strong_dist(a, b), strong, 1e-15);
  const double weak = 1.0 / 2.0 + 0.5 * 2.0 / 3.0 + 0.25 * 1.0 / 2.0;
  EXPECT_NEAR(sp.weak_dist(a, b).value, weak, 1e-15);
}

TEST(Metric, TailBoundMatchesGeometricSum) {
  const auto sp = plain(8);
  // 2 * sum_{k>8} 2^{-k} = 2 * 2^{-8}
  EXPECT_NEAR(sp.tail_bound(), 2.0 * std::pow(2.0, -8), 1e-14);
}

TEST(Metric, WeakIgnoresIndicesBeyondTruncation) {
  const auto sp = plain(4);
  EXPECT_EQ(sp.weak_dist(s({}, {}), s({9}, {5.0})).value, 0.0);
  EXPECT_GT(sp.strong_dist(s({}, {}), s({9}, {5.0})), 4.9);
}

TEST(Metric, WeakEqualsStrongOption) {
  DualMetricSpace::Options o;
  o.space = "line";
  o.weak_equals_strong = true;
  DualMetricSpace sp(o);
  const auto a = CoeffState::scalar("line", {0}, {Complex(3)});
  const auto b = CoeffState::scalar("line", {0}, {Complex(-1)});
  EXPECT_DOUBLE_EQ(sp.dist(MetricKind::kWeak, a, b), 4.0);
}

TEST(Metric, RejectsForeignSpace) {
  const auto sp = plain();
  const auto a = CoeffState::scalar("other", {0}, {Complex(1)});
  EXPECT_THROW(sp.strong_dist(a, a), UsageError);
}

TEST(Metric, MetricNamesRoundTrip) {
  EXPECT_EQ(metric_from_string("weak"), MetricKind::kWeak);
  EXPECT_EQ(metric_from_string(to_string(MetricKind::kStrong)), MetricKind::kStrong);
  EXPECT_THROW(metric_from_string("taxicab"), UsageError);
}

// Axioms on random draws from every registered space.
class MetricAxioms : public ::testing::TestWithParam<std::string> {};

TEST_P(MetricAxioms, HoldOnRandomTriples) {
  const auto fam = make_system(GetParam());
  const auto& sp = fam->space();
  const auto pts = fam->sample_phase_space(0.0, -1.0, 30, 11);
  for (MetricKind m : {MetricKind::kStrong, MetricKind::kWeak}) {
    for (std::size_t i = 0; i + 2 < pts.size(); ++i) {
      const auto &x = pts[i], &y = pts[i + 1], &z = pts[i + 2];
      const double dxy = sp.dist(m, x, y);
      EXPECT_EQ(sp.dist(m, x, x), 0.0);
      EXPECT_GE(dxy, 0.0);
      EXPECT_NEAR(dxy, sp.dist(m, y, x), 1e-15);
      EXPECT_LE(sp.dist(m, x, z), dxy + sp.dist(m, y, z) + 1e-12);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Registry, MetricAxioms,
                         ::testing::Values("single", "bump", "heat", "line", "branch2", "nse"));

TEST(Hausdorff, SemidistIsDirected) {
  const auto sp = plain();
  std::vector<CoeffState> a{s({0}, {0.0}), s({0}, {1.0})};
  std::vector<CoeffState> b{s({0}, {0.0})};
  EXPECT_DOUBLE_EQ(set_semidist(sp, b, a, MetricKind::kStrong), 0.0);
  EXPECT_DOUBLE_EQ(set_semidist(sp, a, b, MetricKind::kStrong), 1.0);
  EXPECT_DOUBLE_EQ(hausdorff_dist(sp, a, b, MetricKind::kStrong), 1.0);
}

TEST(Hausdorff, EmptySetsAreRejected) {
  const auto sp = plain();
  std::vector<CoeffState> a{s({0}, {1.0})}, none;
  EXPECT_THROW(set_semidist(sp, a, none, MetricKind::kStrong), UsageError);
}

TEST(EpsilonNet, CoversAndSeparates) {
  const auto sp = plain();
  std::vector<CoeffState> pts;
  SplitMix64 rng(5);
  for (int i = 0; i < 200; ++i) pts.push_back(s({0, 1}, {rng.uniform(-1, 1), rng.uniform(-1, 1)}));
  for (MetricKind m : {MetricKind::kStrong, MetricKind::kWeak}) {
    const double eps = 0.2;
    const auto net = epsilon_net(sp, pts, eps, m);
    EXPECT_LE(set_semidist(sp, pts, net, m), eps);
    for (std::size_t i = 0; i < net.size(); ++i)
      for (std::size_t j = i + 1; j < net.size(); ++j) EXPECT_GT(sp.dist(m, net[i], net[j]), eps);
  }
}

TEST(EpsilonNet, FirstComeOrder) {
  const auto sp = plain();
  std::vector<CoeffState> pts{s({0}, {0.0}), s({0}, {0.05}), s({0}, {1.0})};
  const auto net = epsilon_net(sp, pts, 0.1, MetricKind::kStrong);
  ASSERT_EQ(net.size(), 2u);
  EXPECT_EQ(net[0], pts[0]);
  EXPECT_EQ(net[1], pts[2]);
}

}  // namespace
}  // namespace ges
