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
#include "ges/ode.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace ges {
namespace {

TEST(Dopri5, ExponentialDecay) {
  const OdeRhs rhs = [](double, std::span<const double> y, std::span<double> d) { d[0] = -y[0]; };
  std::vector<double> ts{0.5, 1.0, 3.0};
  const auto out = integrate_dopri5(rhs, 0.0, {2.0}, ts);
  ASSERT_EQ(out.size(), 3u);
  for (std::size_t i = 0; i < ts.size(); ++i) EXPECT_NEAR(out[i][0], 2.0 * std::exp(-ts[i]), 1e-8);
}

TEST(Dopri5, HarmonicOscillatorConservesEnergy) {
  const OdeRhs rhs = [](double, std::span<const double> y, std::span<double> d) {
    d[0] = y[1];
    d[1] = -y[0];
  };
  std::vector<double> ts{10.0};
  const auto out = integrate_dopri5(rhs, 0.0, {1.0, 0.0}, ts);
  EXPECT_NEAR(out[0][0], std::cos(10.0), 1e-6);
  EXPECT_NEAR(out[0][1], -std::sin(10.0), 1e-6);
}

TEST(Dopri5, NonautonomousForcing) {
  // u' = -u + cos t, u(0) = 0: u = (cos t + sin t - e^{-t}) / 2
  const OdeRhs rhs = [](double t, std::span<const double> y, std::span<double> d) {
    d[0] = -y[0] + std::cos(t);
  };
  std::vector<double> ts{2.0};
  const auto out = integrate_dopri5(rhs, 0.0, {0.0}, ts);
  EXPECT_NEAR(out[0][0], 0.5 * (std::cos(2.0) + std::sin(2.0) - std::exp(-2.0)), 1e-8);
}

TEST(Dopri5, OutputAtStartTimeIsInitialValue) {
  const OdeRhs rhs = [](double, std::span<const double>, std::span<double> d) { d[0] = 1.0; };
  std::vector<double> ts{0.0, 1.0};
  const auto out = integrate_dopri5(rhs, 0.0, {4.0}, ts);
  EXPECT_EQ(out[0][0], 4.0);
  EXPECT_NEAR(out[1][0], 5.0, 1e-12);
}

TEST(Dopri5, HookCanAbort) {
  const OdeRhs rhs = [](double, std::span<const double> y, std::span<double> d) { d[0] = y[0]; };
  std::vector<double> ts{50.0};
  const OdeStepHook hook = [](double, std::span<const double> y) {
    if (y[0] > 100.0) throw std::runtime_error("blow-up");
  };
  EXPECT_THROW(integrate_dopri5(rhs, 0.0, {1.0}, ts, {}, hook), std::runtime_error);
}

}  // namespace
}  // namespace ges
