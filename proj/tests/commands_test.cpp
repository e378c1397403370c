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
#include "ges/commands.hpp"

#include <gtest/gtest.h>

#include <string>

#include "ges/errors.hpp"
#include "ges/parallel.hpp"

namespace ges {
namespace {

const std::string* file(const CommandResult& r, const std::string& name) {
  for (const auto& [n, c] : r.files)
    if (n == name) return &c;
  return nullptr;
}

TEST(Commands, OmegaOnBranching) {
  const auto r = run_omega(Json{{"system", "branch2"}, {"seed", 3}});
  EXPECT_EQ(r.outcome, kExitOk);
  const auto* o = file(r, "omega.json");
  ASSERT_NE(o, nullptr);
  EXPECT_EQ(Json::parse(*o).at("schema"), 1);
  ASSERT_NE(file(r, "profile.csv"), nullptr);
}

TEST(Commands, OmegaOnLineFails) {
  EXPECT_EQ(run_omega(Json{{"system", "line"}, {"metric", "strong"}}).outcome, kExitFails);
}

TEST(Commands, AttractLineFails) {
  const auto r = run_attract(Json{{"system", "line"}, {"metric", "strong"}, {"candidate", "zero"}});
  EXPECT_EQ(r.outcome, kExitFails);
}

TEST(Commands, UnknownSystem) {
  EXPECT_THROW(run_omega(Json{{"system", "pendulum"}}), UnknownSystemError);
}

TEST(Commands, MalformedForcing) {
  EXPECT_THROW(run_nse(Json{{"forcing", "{\"modes\":[{\"k\":[0,0,0]}]}"}}), ForcingError);
}

TEST(Commands, WrongParameterType) {
  EXPECT_THROW(run_omega(Json{{"system", "branch2"}, {"seeds", "many"}}), ParseError);
}

TEST(Commands, ThreadCountDoesNotChangeOutput) {
  const Json p{{"system", "branch2"}, {"seed", 5}};
  const int saved = worker_count();
  set_worker_count(1);
  const auto a = run_omega(p);
  set_worker_count(4);
  const auto b = run_omega(p);
  set_worker_count(saved);
  EXPECT_EQ(a.files, b.files);
}

TEST(Commands, InvarianceOfZero) {
  const auto r = run_invariance(Json{{"system", "branch2"}, {"set", "zero"}});
  EXPECT_EQ(r.outcome, kExitOk);
}

TEST(Commands, VerifyMetricsSuite) {
  const auto r = run_verify("metrics", Json{{"seed", 7}});
  EXPECT_EQ(r.outcome, kExitOk);
  ASSERT_EQ(r.files.size(), 1u);
  EXPECT_EQ(r.files[0].first, "verify_metrics.json");
  const auto j = Json::parse(r.files[0].second);
  EXPECT_EQ(j.at("schema"), 1);
  EXPECT_EQ(j.at("violations"), 0);
}

TEST(Commands, VerifyRejectsUnknownSuite) {
  EXPECT_THROW(run_verify("physics", Json::object()), UsageError);
}

}  // namespace
}  // namespace ges
