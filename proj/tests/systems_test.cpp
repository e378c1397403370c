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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "ges/errors.hpp"
#include "ges/registry.hpp"

namespace ges {
namespace {

TEST(Single, RotatingTrajectoryIgnoresInitialValue) {
  SingleTrajectorySystem sys;
  const auto x = random_l2_ball_state(4);
  const auto u = sys.evolve_to(-3.0, x, 1.0);
  EXPECT_NEAR(sys.space().strong_norm(u), 0.5, 1e-15);
  const auto v = u.find({1, 0, 0});
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NEAR(v[0].real(), 0.5 * std::sin(1.0), 1e-15);
  EXPECT_FALSE(sys.is_autonomous());
  EXPECT_TRUE(SingleTrajectorySystem(true).is_autonomous());
}

TEST(Bump, StatesHaveUnitNorm) {
  const auto sp = l2z_space();
  for (double p = -5.0; p <= 5.0; p += 0.37) {
    EXPECT_NEAR(sp.strong_norm(bump_state(0.0, p)), 1.0, 1e-14);
  }
}

TEST(Bump, InterpolatesBasisVectors) {
  const auto u = bump_state(0.0, 2.25);
  const double a = 0.75, b = 0.25, n = std::hypot(a, b);
  EXPECT_NEAR(u.find({2, 0, 0})[0].real(), a / n, 1e-15);
  EXPECT_NEAR(u.find({3, 0, 0})[0].real(), b / n, 1e-15);
  EXPECT_EQ(bump_state(1.0, 4.0), CoeffState::scalar("l2z", {3}, {1.0}));
}

TEST(Bump, EvolutionShiftsThePhase) {
  BumpSystem sys;
  const auto x = bump_state(0.0, 0.3);
  EXPECT_EQ(sys.branch_count(0.0, x), 1);
  const auto u = sys.evolve_to(-1.0, x, 1.5);
  EXPECT_LT(sys.space().strong_dist(u, bump_state(0.0, 2.8)), 1e-14);
  auto p = sys.phase_of(x);
  ASSERT_TRUE(p.has_value());
  EXPECT_NEAR(*p, 0.3, 1e-12);
}

TEST(Bump, OffCurveStateHasNoTrajectory) {
  BumpSystem sys;
  const auto x = CoeffState::scalar("l2z", {0, 2}, {0.6, 0.8});
  EXPECT_EQ(sys.branch_count(0.0, x), 0);
  EXPECT_FALSE(sys.phase_of(x).has_value());
}

TEST(Bump, WeakDistanceToZeroVanishesFarAway) {
  const auto sp = l2z_space();
  const auto zero = CoeffState::zero("l2z", 1, 1);
  EXPECT_LT(sp.weak_dist(bump_state(0.0, 40.0), zero).value, 1e-9);
  EXPECT_NEAR(sp.strong_dist(bump_state(0.0, 40.0), zero), 1.0, 1e-14);
}

TEST(Heat, ClosedFormDecay) {
  HeatSystem sys;
  const auto x = sys.node_seed(64);  // xi = 1
  const auto u = sys.evolve_to(-2.0, x, 0.0);
  EXPECT_NEAR(sys.space().strong_norm(u), std::exp(-2.0), 1e-14);
}

TEST(Heat, BandSeedsAreUnitNorm) {
  HeatSystem sys;
  for (int j : {0, 1, 2}) {
    EXPECT_NEAR(sys.space().strong_norm(sys.random_band_seed(j, 9)), 1.0, 1e-12);
  }
  EXPECT_THROW(sys.random_band_seed(8, 1), GridResolutionError);
}

// Oracle: j = 1/2 (log2(ln 2 / (t - s0)) + 2).
TEST(Heat, BandLevelBound) {
  for (double s0 : {-1.0, -2.0, -4.0}) {
    const double expect = 0.5 * (std::log2(std::numbers::ln2 / (0.0 - s0)) + 2.0);
    EXPECT_NEAR(HeatSystem::band_level_bound(0.0, s0), expect, 1e-15);
  }
}

TEST(Heat, BandWitnessKeepsHalfNorm) {
  HeatSystem sys;
  for (double s0 : {-1.0, -2.0, -4.0}) {
    const auto w = sys.band_witness(0.0, s0);
    EXPECT_LE(w.j, w.bound);
    const auto u = sys.evolve_to(s0, w.f_hat, 0.0);
    EXPECT_GE(sys.space().strong_norm(u), 0.5 - 1e-6);
  }
}

TEST(Heat, CoarseGridCannotResolveDeepWitness) {
  HeatOptions o;
  o.spacing = 0.25;
  HeatSystem sys(o);
  EXPECT_THROW(sys.band_witness(0.0, -400.0), GridResolutionError);
}

TEST(Line, TrajectoryIsElapsedTime) {
  LineSystem sys;
  const auto u = sys.evolve_to(-3.0, LineSystem::point(17.0), 2.0);
  EXPECT_EQ(u, LineSystem::point(5.0));
}

TEST(Branching, TwoRates) {
  BranchingSystem sys;
  const auto x = random_l2_ball_state(2);
  const double n0 = sys.space().strong_norm(x);
  EXPECT_NEAR(sys.space().strong_norm(sys.evolve_to(0.0, x, 1.0, 0)), n0 * std::exp(-1.0), 1e-14);
  EXPECT_NEAR(sys.space().strong_norm(sys.evolve_to(0.0, x, 1.0, 1)), n0 * std::exp(-2.0), 1e-14);
  EXPECT_THROW(sys.evolve_to(0.0, x, 1.0, 2), UsageError);
}

TEST(Systems, EvolveRejectsBackwardTimes) {
  for (const auto& id : system_ids()) {
    const auto fam = make_system(id);
    const auto x = fam->sample_phase_space(0.0, 0.0, 1, 1).front();
    EXPECT_THROW(fam->evolve_to(0.0, x, -1.0), UsageError) << id;
  }
}

TEST(Systems, RandomBallStatesStayInBall) {
  const auto sp = l2z_space();
  for (std::uint64_t s = 0; s < 50; ++s) EXPECT_LE(sp.strong_norm(random_l2_ball_state(s)), 1.0);
}

TEST(Registry, UnknownIdIsReported) {
  EXPECT_THROW(make_system("pendulum"), UnknownSystemError);
}

TEST(Registry, KnowsAllIds) {
  const std::vector<std::string> expect{"single", "bump", "heat", "line", "branch2", "nse"};
  for (const auto& id : expect) EXPECT_EQ(make_system(id)->system_id(), id);
}

}  // namespace
}  // namespace ges
