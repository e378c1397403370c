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
#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("ges_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run(const std::string& args) {
  const std::string cmd = std::string(GES_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Cli, UnknownSystemExits64) {
  const auto d = scratch("unknown");
  EXPECT_EQ(run("--out " + d.string() + " omega --system pendulum"), 64);
}

TEST(Cli, BadFlagExits64) { EXPECT_EQ(run("omega --no-such-flag"), 64); }

TEST(Cli, MalformedForcingExits65) {
  const auto d = scratch("forcing");
  std::ofstream(d / "f.json") << R"({"modes":[{"k":[1,0,0],"amp":[1,0],"time":{"kind":"square"}}]})";
  EXPECT_EQ(run("--out " + d.string() + " nse --forcing " + (d / "f.json").string()), 65);
  std::ofstream(d / "g.json") << "{not json";
  EXPECT_EQ(run("--out " + d.string() + " nse --forcing " + (d / "g.json").string()), 65);
}

TEST(Cli, LineOmegaExits3) {
  const auto d = scratch("line");
  EXPECT_EQ(run("--out " + d.string() + " omega --system line --metric strong"), 3);
  EXPECT_TRUE(fs::exists(d / "omega.json"));
  EXPECT_TRUE(fs::exists(d / "profile.csv"));
}

TEST(Cli, OmegaConvergesForBranching) {
  const auto d = scratch("branch");
  EXPECT_EQ(run("--out " + d.string() + " --seed 4 omega --system branch2"), 0);
  EXPECT_EQ(slurp(d / "profile.csv").rfind("s,semidist,metric,system,t\n", 0), 0u);
}

TEST(Cli, ThreadsDoNotChangeBytes) {
  const auto a = scratch("t1"), b = scratch("t4");
  ASSERT_EQ(run("--threads 1 --out " + a.string() + " --seed 9 omega --system branch2"), 0);
  ASSERT_EQ(run("--threads 4 --out " + b.string() + " --seed 9 omega --system branch2"), 0);
  EXPECT_EQ(slurp(a / "omega.json"), slurp(b / "omega.json"));
  EXPECT_EQ(slurp(a / "profile.csv"), slurp(b / "profile.csv"));
}

TEST(Cli, ConfigFileIsRead) {
  const auto d = scratch("config");
  std::ofstream(d / "c.json") << R"({"system":"line","metric":"strong"})";
  EXPECT_EQ(run("--config " + (d / "c.json").string() + " --out " + d.string() + " attract"), 3);
}

TEST(Cli, VerifyMetricsWritesReport) {
  const auto d = scratch("verify");
  EXPECT_EQ(run("--out " + d.string() + " --seed 7 verify metrics"), 0);
  const auto text = slurp(d / "verify_metrics.json");
  EXPECT_NE(text.find("\"schema\": 1"), std::string::npos);
}

}  // namespace
