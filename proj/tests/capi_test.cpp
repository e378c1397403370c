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
#include "ges/ges.h"

#include <gtest/gtest.h>

#include <cmath>
#include <string>

namespace {

TEST(CApi, VersionAndIds) {
  EXPECT_STREQ(ges_version(), "0.1.0");
  char* ids = ges_system_ids();
  const std::string s(ids);
  ges_string_free(ids);
  EXPECT_NE(s.find("heat"), std::string::npos);
  EXPECT_NE(s.find("nse"), std::string::npos);
}

TEST(CApi, UnknownSystem) {
  ges_system* sys = nullptr;
  EXPECT_EQ(ges_system_create("pendulum", nullptr, &sys), GES_ERR_UNKNOWN_SYSTEM);
  EXPECT_EQ(sys, nullptr);
  EXPECT_NE(std::string(ges_last_error()).find("pendulum"), std::string::npos);
  EXPECT_EQ(ges_status_exit_code(GES_ERR_UNKNOWN_SYSTEM), 64);
}

TEST(CApi, NullArguments) {
  EXPECT_EQ(ges_system_create(nullptr, nullptr, nullptr), GES_ERR_NULL_ARGUMENT);
  EXPECT_EQ(ges_run(nullptr, nullptr, nullptr, nullptr), GES_ERR_NULL_ARGUMENT);
}

TEST(CApi, EvolveAndDistance) {
  ges_system* sys = nullptr;
  ASSERT_EQ(ges_system_create("branch2", nullptr, &sys), GES_OK);
  EXPECT_STREQ(ges_system_id(sys), "branch2");
  EXPECT_EQ(ges_system_is_autonomous(sys), 1);
  ges_state* x = nullptr;
  ASSERT_EQ(ges_state_from_json(R"({"space":"l2z","idx":[0],"val":[0.8]})", &x), GES_OK);
  EXPECT_EQ(ges_system_branch_count(sys, 0.0, x), 2);
  ges_state* y = nullptr;
  ASSERT_EQ(ges_system_evolve(sys, x, 0.0, 1.0, 1, &y), GES_OK);
  double d = 0.0;
  ASSERT_EQ(ges_system_distance(sys, GES_METRIC_STRONG, x, y, &d), GES_OK);
  EXPECT_NEAR(d, 0.8 * (1.0 - std::exp(-2.0)), 1e-14);
  char* text = nullptr;
  ASSERT_EQ(ges_state_to_json(y, &text), GES_OK);
  EXPECT_NE(std::string(text).find("\"space\":\"l2z\""), std::string::npos);
  ges_string_free(text);
  ges_state_free(y);
  ges_state_free(x);
  ges_system_free(sys);
}

TEST(CApi, SampleIndexOutOfRange) {
  ges_system* sys = nullptr;
  ASSERT_EQ(ges_system_create("line", nullptr, &sys), GES_OK);
  ges_state* x = nullptr;
  EXPECT_EQ(ges_system_sample(sys, 0.0, -1.0, 4, 1, 0, &x), GES_OK);
  ges_state_free(x);
  EXPECT_EQ(ges_system_sample(sys, 0.0, -1.0, 4, 1, 4, &x), GES_ERR_USAGE);
  ges_system_free(sys);
}

TEST(CApi, MalformedJson) {
  ges_state* x = nullptr;
  EXPECT_EQ(ges_state_from_json("{", &x), GES_ERR_PARSE);
  EXPECT_EQ(ges_status_exit_code(GES_ERR_PARSE), 65);
}

TEST(CApi, ForcingErrorMapsTo65) {
  ges_result* r = nullptr;
  const ges_status st = ges_run("nse", nullptr, R"({"forcing":{"modes":[{"k":[0,0,0],"amp":[1,0]}]}})", &r);
  EXPECT_EQ(st, GES_ERR_FORCING);
  EXPECT_EQ(ges_status_exit_code(st), 65);
}

TEST(CApi, RunOmega) {
  ges_result* r = nullptr;
  ASSERT_EQ(ges_run("omega", nullptr, R"({"system":"branch2"})", &r), GES_OK);
  EXPECT_EQ(ges_result_outcome(r), 0);
  ASSERT_EQ(ges_result_file_count(r), 2u);
  EXPECT_STREQ(ges_result_file_name(r, 0), "omega.json");
  std::size_t len = 0;
  const char* c = ges_result_file_content(r, 0, &len);
  EXPECT_EQ(std::string(c).size(), len);
  EXPECT_EQ(ges_result_file_name(r, 9), nullptr);
  ges_result_free(r);
}

TEST(CApi, UnknownCommand) {
  ges_result* r = nullptr;
  EXPECT_EQ(ges_run("teleport", nullptr, nullptr, &r), GES_ERR_USAGE);
}

TEST(CApi, Threads) {
  const int saved = ges_get_threads();
  ges_set_threads(3);
  EXPECT_EQ(ges_get_threads(), 3);
  ges_set_threads(saved);
}

}  // namespace
