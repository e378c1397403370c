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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ges/errors.hpp"

namespace ges {
namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

std::vector<std::vector<double>> integrate_dopri5(const OdeRhs& rhs, double t0,
                                                  std::vector<double> y0,
                                                  std::span<const double> ts,
                                                  const OdeOptions& opts,
                                                  const OdeStepHook& hook) {
  const std::size_t n = y0.size();
  std::vector<std::vector<double>> out;
  out.reserve(ts.size());
  if (!std::is_sorted(ts.begin(), ts.end()) || (!ts.empty() && ts.front() < t0)) {
    throw UsageError("output times must be ascending and not before the start time");
  }

  std::vector<double> y = std::move(y0), ynew(n), tmp(n);
  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
  double t = t0;
  double h_prop = opts.initial_step;
  double h = h_prop;
  rhs(t, y, k1);
  long steps = 0;

  for (const double target : ts) {
    while (t < target) {
      if (++steps > opts.max_steps) throw DivergenceError("ODE step budget exhausted");
      h = std::min(h_prop, opts.max_step);
      const bool lands = (target - t) <= h * (1.0 + 1e-12);
      if (lands) h = target - t;

      for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k1[i];
      rhs(t + c2 * h, tmp, k2);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
      rhs(t + c3 * h, tmp, k3);
      for (std::size_t i = 0; i < n; ++i)
        tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
      rhs(t + c4 * h, tmp, k4);
      for (std::size_t i = 0; i < n; ++i)
        tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
      rhs(t + c5 * h, tmp, k5);
      for (std::size_t i = 0; i < n; ++i)
        tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
      rhs(t + h, tmp, k6);
      for (std::size_t i = 0; i < n; ++i)
        ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
      const double tnew = lands ? target : t + h;
      rhs(tnew, ynew, k7);

      double err = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                               e7 * k7[i]);
        const double sc = opts.atol + opts.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
        err += (ei / sc) * (ei / sc);
      }
      err = n ? std::sqrt(err / static_cast<double>(n)) : 0.0;
      if (!std::isfinite(err)) {
        h_prop = h * 0.1;
        if (h_prop < 1e-14) throw DivergenceError("ODE solution became non-finite");
        continue;
      }

      const double factor =
          err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      if (err <= 1.0) {
        t = tnew;
        y.swap(ynew);
        k1.swap(k7);
        if (hook) hook(t, y);
        // A step shortened only to hit an output time does not shrink the next one.
        h_prop = lands ? std::max(h_prop, h * factor) : h * factor;
      } else {
        h_prop = h * std::max(factor, 0.1);
        if (h_prop < 1e-14) {
          throw DivergenceError("ODE step size underflow at t=" + std::to_string(t));
        }
      }
    }
    out.push_back(y);
  }
  return out;
}

}  // namespace ges
