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
#include "ges/registry.hpp"

#include "ges/errors.hpp"
#include "ges/systems.hpp"

namespace ges {
namespace {

template <typename T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ParseError(std::string("config field '") + key + "' has the wrong type");
  }
}

}  // namespace

const std::vector<std::string>& system_ids() {
  static const std::vector<std::string> ids = {"single", "bump", "heat", "line", "branch2", "nse"};
  return ids;
}

NseOptions nse_options_from_json(const Json& config) {
  NseOptions o;
  o.k_max = get_or(config, "k_max", o.k_max);
  o.nu = get_or(config, "nu", o.nu);
  const auto conv = get_or<std::string>(config, "convention", "radius");
  if (conv == "radius") {
    o.convention = BallConvention::kRadius;
  } else if (conv == "squared") {
    o.convention = BallConvention::kSquared;
  } else {
    throw ParseError("nse convention must be 'radius' or 'squared'");
  }
  if (config.is_object() && config.contains("forcing")) {
    const auto& f = config.at("forcing");
    o.forcing = ForcingProfile::from_json_text(f.is_string() ? f.get<std::string>() : f.dump());
  }
  return o;
}

std::unique_ptr<TrajectoryFamily> make_system(const std::string& id, const Json& config) {
  if (id == "single") return std::make_unique<SingleTrajectorySystem>(get_or(config, "stationary", false));
  if (id == "bump") return std::make_unique<BumpSystem>(get_or(config, "window", 12.0));
  if (id == "heat") {
    HeatOptions o;
    o.xi_max = get_or(config, "xi_max", o.xi_max);
    o.spacing = get_or(config, "spacing", o.spacing);
    return std::make_unique<HeatSystem>(o);
  }
  if (id == "line") return std::make_unique<LineSystem>();
  if (id == "branch2") return std::make_unique<BranchingSystem>();
  if (id == "nse") return std::make_unique<NseGalerkin>(nse_options_from_json(config));
  if (id == "forced-scalar") return std::make_unique<ForcedScalarSystem>(get_or(config, "sigma", 0.0));
  std::string known;
  for (const auto& k : system_ids()) known += (known.empty() ? "" : ", ") + k;
  throw UnknownSystemError("unknown system_id '" + id + "' (known: " + known + ")");
}

std::unique_ptr<SymbolFamily> make_symbol_family(const Json& config, const Json& system_config) {
  const auto kind = get_or<std::string>(config, "kind", "phase");
  if (kind != "phase") throw ParseError("symbol kind must be 'phase'");
  const auto count = get_or<std::size_t>(config, "count", 32);
  const auto sys = get_or<std::string>(config, "system", "forced-scalar");
  if (sys == "forced-scalar") return std::make_unique<ForcedScalarFamily>(count);
  if (sys == "nse") return std::make_unique<NseSymbolFamily>(nse_options_from_json(system_config), count);
  std::shared_ptr<const TrajectoryFamily> fam = make_system(sys, system_config);
  if (!fam->is_autonomous()) {
    throw UsageError("system '" + sys + "' has no symbol construction; use an autonomous system");
  }
  return std::make_unique<AutonomousSymbolFamily>(std::move(fam), count);
}

PullbackSchedule default_schedule(const std::string& id, double t) {
  if (id == "nse") return PullbackSchedule::geometric(t, 1.0, 1.6, 8);
  return PullbackSchedule::geometric(t, 1.0, 1.6, 16);
}

std::size_t default_seed_count(const std::string& id) {
  if (id == "bump") return 2401;
  if (id == "nse") return 8;
  return 24;
}

PullbackSchedule schedule_from_json(const Json& j, const std::string& id, double t) {
  if (!j.is_object() || j.empty()) return default_schedule(id, t);
  const auto def = default_schedule(id, t);
  if (j.contains("starts")) {
    return PullbackSchedule::from_starts(t, get_or<std::vector<double>>(j, "starts", {}));
  }
  const auto mode = get_or<std::string>(j, "mode", "geometric");
  const int n = get_or(j, "n", static_cast<int>(def.starts.size()));
  const double delta = get_or(j, "delta", def.delta);
  if (mode == "geometric") return PullbackSchedule::geometric(t, delta, get_or(j, "ratio", def.ratio), n);
  if (mode == "linear") return PullbackSchedule::linear(t, delta, n);
  throw ParseError("schedule mode must be 'geometric' or 'linear'");
}

}  // namespace ges
