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

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ges/evolution.hpp"
#include "ges/omega.hpp"

namespace ges {

using Json = nlohmann::json;

/// {"space": tag, "dim": d, "components": c, "idx": [[k...]...], "val": [...]}.
/// Scalar values are written as re, or [re, im] when the imaginary part is
/// nonzero; multi-component values as a list of such entries.
Json state_to_json(const CoeffState& x);
/// Throws ParseError on malformed input.
CoeffState state_from_json(const Json& j);

/// One JSON object per line with fields (t, s, branch, seed, state).
std::string ensemble_to_jsonl(const PullbackEnsemble& e);

Json omega_to_json(const OmegaApprox& o);

/// Columns (s, semidist, metric, system, t), one row per profile point.
std::string profile_csv(std::span<const ProfilePoint> profile, MetricKind metric,
                        const std::string& system, double t, bool with_header = true);

/// Shortest round-trip decimal form, identical across runs.
std::string format_double(double v);

}  // namespace ges
