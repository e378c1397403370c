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
#include "ges/io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "ges/errors.hpp"
#include "ges/nse.hpp"
#include "ges/systems.hpp"

namespace ges {
namespace {

TEST(StateJson, ScalarRoundTrip) {
  const auto x = CoeffState::scalar("l2z", {-2, 5}, {Complex(0.25), Complex(1, -3)});
  const auto j = state_to_json(x);
  EXPECT_EQ(j.at("space"), "l2z");
  EXPECT_EQ(j.at("val")[0], 0.25);
  EXPECT_EQ(j.at("val")[1], Json::array({1.0, -3.0}));
  EXPECT_EQ(state_from_json(j), x);
}

TEST(StateJson, VectorRoundTrip) {
  NseGalerkin nse;
  const auto u = nse.random_field(3, 1.0);
  EXPECT_EQ(state_from_json(Json::parse(state_to_json(u).dump())), u);
}

TEST(StateJson, MinimalForm) {
  const auto x = state_from_json(Json::parse(R"({"space":"line","idx":[0],"val":[2.5]})"));
  EXPECT_EQ(x, LineSystem::point(2.5));
}

TEST(StateJson, MalformedInputs) {
  for (const char* bad : {R"({"idx":[0],"val":[1]})", R"({"space":"l2z","idx":[0,1],"val":[1]})",
                          R"({"space":"l2z","idx":[0],"val":["a"]})",
                          R"({"space":"l2z","idx":[0,0],"val":[1,2]})",
                          R"({"space":"l2z","idx":[[0,1],[1]],"val":[1,2]})"}) {
    EXPECT_THROW(state_from_json(Json::parse(bad)), ParseError) << bad;
  }
}

TEST(FormatDouble, ShortestRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 1e22, 0.0}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
}

TEST(ProfileCsv, ColumnOrder) {
  const std::vector<ProfilePoint> p{{-1.0, 0.5}, {-2.0, 0.25}};
  EXPECT_EQ(profile_csv(p, MetricKind::kWeak, "heat", 0.0, true),
            "s,semidist,metric,system,t\n-1,0.5,weak,heat,0\n-2,0.25,weak,heat,0\n");
}

TEST(OmegaJson, CarriesSchema) {
  OmegaApprox o;
  o.system = "branch2";
  o.points.push_back(CoeffState::zero("l2z", 1, 1));
  o.profile.push_back({-1.0, 0.1});
  const auto j = omega_to_json(o);
  EXPECT_EQ(j.at("schema"), 1);
  EXPECT_EQ(j.at("profile")[0].at("s"), -1.0);
  o.forward = true;
  EXPECT_TRUE(omega_to_json(o).at("profile")[0].contains("horizon"));
}

TEST(EnsembleJsonl, OneLinePerEntry) {
  PullbackEnsemble e;
  e.t = 0.0;
  e.entries.push_back({-1.0, 0, 0, LineSystem::point(1), LineSystem::point(1)});
  e.entries.push_back({-1.0, 1, 1, LineSystem::point(2), LineSystem::point(2)});
  const auto text = ensemble_to_jsonl(e);
  const auto nl = text.find('\n');
  ASSERT_NE(nl, std::string::npos);
  const auto first = Json::parse(text.substr(0, nl));
  for (const char* k : {"t", "s", "branch", "seed", "state"}) EXPECT_TRUE(first.contains(k));
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
}

}  // namespace
}  // namespace ges
