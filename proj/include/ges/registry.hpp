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

#include <memory>
#include <string>
#include <vector>

#include "ges/io.hpp"
#include "ges/nse.hpp"
#include "ges/omega.hpp"
#include "ges/symbols.hpp"

namespace ges {

/// Registered ids: single, bump, heat, line, branch2, nse.
const std::vector<std::string>& system_ids();

/// Builds a system from its id and an optional config object. Throws
/// UnknownSystemError for unregistered ids and ForcingError for bad forcing.
std::unique_ptr<TrajectoryFamily> make_system(const std::string& id, const Json& config = {});

/// Keys: k_max, nu, convention ("radius" | "squared"), forcing (object or JSON text).
NseOptions nse_options_from_json(const Json& config);

/// {"kind": "phase", "count": 32, "system": "forced-scalar" | "nse" | <autonomous id>}.
std::unique_ptr<SymbolFamily> make_symbol_family(const Json& config, const Json& system_config = {});

/// Per-system default schedule at time t (shallower for the Galerkin system).
PullbackSchedule default_schedule(const std::string& id, double t);

/// Per-system default ensemble size (dense along the bump curve, small for NSE).
std::size_t default_seed_count(const std::string& id);

/// Schedule from {"mode", "delta", "ratio", "n"} over the system default.
PullbackSchedule schedule_from_json(const Json& j, const std::string& id, double t);

}  // namespace ges
