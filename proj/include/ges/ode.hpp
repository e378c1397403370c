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
#include <span>
#include <vector>

namespace ges {

struct OdeOptions {
  double rtol = 1e-8;
  double atol = 1e-10;
  double initial_step = 1e-3;
  double max_step = 0.25;
  long max_steps = 2'000'000;
};

using OdeRhs = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

/// Called after each accepted step; throwing aborts the integration.
using OdeStepHook = std::function<void(double t, std::span<const double> y)>;

/// Adaptive Dormand-Prince 5(4) integration from (t0, y0). Steps are clipped to
/// land exactly on every requested output time, so no interpolation is
/// involved. `ts` must be ascending and >= t0.
std::vector<std::vector<double>> integrate_dopri5(const OdeRhs& rhs, double t0,
                                                  std::vector<double> y0,
                                                  std::span<const double> ts,
                                                  const OdeOptions& opts = {},
                                                  const OdeStepHook& hook = {});

}  // namespace ges
