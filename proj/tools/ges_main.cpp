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
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ges/ges.h"

namespace {

using Json = nlohmann::json;

constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

struct Globals {
  std::string config;
  std::string out = ".";
  std::uint64_t seed = 0;
  bool seed_set = false;
  double tol = 0.0;
  int threads = 0;
};

bool read_file(const std::string& path, std::string& text) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  text = ss.str();
  return true;
}

int write_outputs(const ges_result* r, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  for (std::size_t i = 0; i < ges_result_file_count(r); ++i) {
    std::size_t len = 0;
    const char* content = ges_result_file_content(r, i, &len);
    const auto path = std::filesystem::path(dir) / ges_result_file_name(r, i);
    std::ofstream f(path, std::ios::binary);
    f.write(content, static_cast<std::streamsize>(len));
    if (!f) {
      std::cerr << "ges: cannot write " << path.string() << "\n";
      return 1;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pullback attractors of generalized evolutionary systems", "ges"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ges_version()));

  Globals g;
  app.add_option("--config", g.config, "JSON parameter file")->check(CLI::ExistingFile);
  app.add_option("--out", g.out, "output directory");
  auto* seed_opt = app.add_option("--seed", g.seed, "RNG seed");
  auto* tol_opt = app.add_option("--tol", g.tol, "convergence tolerance");
  app.add_option("--threads", g.threads, "worker threads (default GES_THREADS or 1)")
      ->check(CLI::PositiveNumber);
  for (auto* o : app.get_options()) o->configurable(false);
  app.fallthrough();

  Json cli = Json::object();
  std::string suite = "all";
  std::string system, metric, forcing_file, symbols_file, kind, set, candidate;
  double eps_net = 0.0, t = 0.0;
  std::size_t seeds = 0;
  bool witnesses = false;

  auto add_system_flags = [&](CLI::App* sub) {
    sub->add_option("--system", system, "registry id");
    sub->add_option("--metric", metric, "strong or weak")->check(CLI::IsMember({"strong", "weak"}));
    sub->add_option("--eps-net", eps_net, "net radius");
    sub->add_option("--t", t, "target time");
    sub->add_option("--seeds", seeds, "seed count");
  };

  auto* omega = app.add_subcommand("omega", "approximate the pullback omega-limit set");
  add_system_flags(omega);
  omega->add_flag("--witnesses", witnesses, "add the system's depth witnesses");

  auto* attract = app.add_subcommand("attract", "attraction diagnostic for a candidate set");
  add_system_flags(attract);
  attract->add_option("--candidate", candidate, "zero, omega, or a JSON file with states");

  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("suite", suite, "metrics|inclusion|energy|invariance|tracking|uniform|all")
      ->check(CLI::IsMember({"metrics", "inclusion", "energy", "invariance", "tracking",
                             "uniform", "all"}));
  verify->add_option("--system", system, "restrict to one system");

  auto* nse = app.add_subcommand("nse", "forcing analysis and absorbing-ball check");
  nse->add_option("--forcing", forcing_file, "forcing JSON file");
  nse->add_option("--seeds", seeds, "trajectory count");

  auto* uniform = app.add_subcommand("uniform", "uniform omega over a symbol space");
  uniform->add_option("--symbols", symbols_file, "symbol space JSON file");
  uniform->add_option("--metric", metric, "strong or weak")->check(CLI::IsMember({"strong", "weak"}));
  uniform->add_option("--seeds", seeds, "seeds per symbol");

  auto* invariance = app.add_subcommand("invariance", "invariance check for a set family");
  add_system_flags(invariance);
  invariance->add_option("--kind", kind, "semi, quasi or full")
      ->check(CLI::IsMember({"semi", "quasi", "full"}));
  invariance->add_option("--set", set, "zero or omega");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  Json params = Json::object();
  if (!g.config.empty()) {
    std::string text;
    if (!read_file(g.config, text)) {
      std::cerr << "ges: cannot read " << g.config << "\n";
      return kExitUsage;
    }
    try {
      params = Json::parse(text);
    } catch (const Json::exception& e) {
      std::cerr << "ges: malformed config: " << e.what() << "\n";
      return kExitData;
    }
    if (!params.is_object()) {
      std::cerr << "ges: config must be a JSON object\n";
      return kExitData;
    }
  }

  if (*seed_opt) params["seed"] = g.seed;
  if (*tol_opt) params["tol"] = g.tol;
  if (!system.empty()) params["system"] = system;
  if (!metric.empty()) params["metric"] = metric;
  if (eps_net > 0.0) params["eps_net"] = eps_net;
  if (t != 0.0) params["t"] = t;
  if (seeds > 0) params["seeds"] = seeds;
  if (witnesses) params["witnesses"] = true;
  if (!kind.empty()) params["kind"] = kind;
  if (!set.empty()) params["set"] = set;

  if (!candidate.empty()) {
    if (candidate == "zero" || candidate == "omega") {
      params["candidate"] = candidate;
    } else {
      std::string text;
      if (!read_file(candidate, text)) {
        std::cerr << "ges: cannot read " << candidate << "\n";
        return kExitUsage;
      }
      try {
        params["candidate"] = Json::parse(text);
      } catch (const Json::exception& e) {
        std::cerr << "ges: malformed candidate: " << e.what() << "\n";
        return kExitData;
      }
    }
  }
  if (!forcing_file.empty()) {
    std::string text;
    if (!read_file(forcing_file, text)) {
      std::cerr << "ges: cannot read " << forcing_file << "\n";
      return kExitUsage;
    }
    params["forcing"] = text;
  }
  if (!symbols_file.empty()) {
    std::string text;
    if (!read_file(symbols_file, text)) {
      std::cerr << "ges: cannot read " << symbols_file << "\n";
      return kExitUsage;
    }
    try {
      params["symbols"] = Json::parse(text);
    } catch (const Json::exception& e) {
      std::cerr << "ges: malformed symbol space: " << e.what() << "\n";
      return kExitData;
    }
  }

  if (g.threads > 0) ges_set_threads(g.threads);

  const std::string command = app.get_subcommands().front()->get_name();
  ges_result* result = nullptr;
  const ges_status st = ges_run(command.c_str(), suite.c_str(), params.dump().c_str(), &result);
  if (st != GES_OK) {
    std::cerr << "ges: " << ges_status_name(st) << ": " << ges_last_error() << "\n";
    return ges_status_exit_code(st);
  }
  int rc = write_outputs(result, g.out);
  std::cout << ges_result_summary(result) << "\n";
  if (rc == 0) rc = ges_result_outcome(result);
  ges_result_free(result);
  return rc;
}
