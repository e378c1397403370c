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
#include "ges/evolution.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "ges/errors.hpp"
#include "ges/random.hpp"
#include "ges/registry.hpp"
#include "ges/systems.hpp"

namespace ges {
namespace {

class Compose : public ::testing::TestWithParam<std::string> {};

TEST_P(Compose, ClosedFormSystemsCompose) {
  const auto fam = make_system(GetParam());
  SplitMix64 rng(7);
  for (int d = 0; d < 20; ++d) {
    double a = rng.uniform(-20.0, 0.0), b = rng.uniform(-20.0, 0.0), c = rng.uniform(-20.0, 0.0);
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    const auto seeds = fam->sample_phase_space(c, a, 4, rng.next());
    EXPECT_LE(compose_check(*fam, seeds, a, b, c), 1e-6);
  }
}

INSTANTIATE_TEST_SUITE_P(ClosedForm, Compose,
                         ::testing::Values("single", "bump", "heat", "branch2"));

TEST(Compose, LineGapIsMiddleMinusStart) {
  const auto fam = make_system("line");
  const auto seeds = fam->sample_phase_space(0.0, -5.0, 3, 1);
  EXPECT_NEAR(compose_check(*fam, seeds, -5.0, -2.0, 0.0), 3.0, 1e-12);
}

TEST(Pullback, ImageRecordsProvenance) {
  BranchingSystem sys;
  const auto seeds = sys.sample_phase_space(0.0, -1.0, 3, 5);
  const auto e = pullback_image(sys, seeds, 0.0, -1.0);
  ASSERT_EQ(e.entries.size(), 6u);
  EXPECT_EQ(e.entries[1].seed_index, 0u);
  EXPECT_EQ(e.entries[1].branch, 1);
  const auto first = pullback_image(sys, seeds, 0.0, -1.0, BranchSelection::kFirst);
  EXPECT_EQ(first.entries.size(), 3u);
}

TEST(Pullback, RejectsStartAfterTarget) {
  BranchingSystem sys;
  const auto seeds = sys.sample_phase_space(0.0, 0.0, 1, 5);
  EXPECT_THROW(pullback_image(sys, seeds, 0.0, 1.0), UsageError);
}

TEST(Sampling, GridEndsAtHorizon) {
  HeatSystem sys;
  const auto tr = sample_trajectory(sys, -1.0, sys.node_seed(10), 1.0, 0.25);
  ASSERT_EQ(tr.times.size(), 5u);
  EXPECT_DOUBLE_EQ(tr.times.back(), 0.0);
}

TEST(Energy, HeatSatisfiesInequality) {
  HeatSystem sys;
  const auto tr = sample_trajectory(sys, 0.0, sys.random_band_seed(1, 3), 1.0, 1.0 / 1024.0);
  const auto rep = energy_inequality_check(sys, tr, 1e-9, 0.1);
  EXPECT_TRUE(rep.violations.empty());
  EXPECT_TRUE(rep.has_integral_form);
  EXPECT_LE(rep.integral_balance_rate, 1e-6);
}

TEST(Energy, CoarseGridIsRejected) {
  HeatSystem sys;
  const auto tr = sample_trajectory(sys, 0.0, sys.node_seed(3), 1.0, 0.5);
  EXPECT_THROW(energy_inequality_check(sys, tr, 0.1, 0.5), UsageError);
}

TEST(Energy, GrowingNormIsFlagged) {
  // The line trajectory grows linearly; it cannot satisfy |u(t)| <= |u(t0)| + eps.
  LineSystem sys;
  const auto tr = sample_trajectory(sys, 0.0, LineSystem::point(0.0), 2.0, 0.01);
  const auto rep = energy_inequality_check(sys, tr, 0.01, 0.5);
  EXPECT_FALSE(rep.violations.empty());
}

}  // namespace
}  // namespace ges
