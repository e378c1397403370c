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
#include <utility>
#include <vector>

#include "ges/io.hpp"

namespace ges {

/// Process exit codes shared by the commands and the CLI.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitInconclusive = 2,
  kExitFails = 3,
  kExitUsage = 64,
  kExitData = 65,
};

/// Output of one command: an exit outcome plus named text files.
struct CommandResult {
  int outcome = kExitOk;
  std::string summary;
  std::vector<std::pair<std::string, std::string>> files;
};

// Parameters are JSON objects; see README for the recognized keys.
CommandResult run_omega(const Json& params);
CommandResult run_attract(const Json& params);
CommandResult run_verify(const std::string& suite, const Json& params);
CommandResult run_nse(const Json& params);
CommandResult run_uniform(const Json& params);
CommandResult run_invariance(const Json& params);

/// Suite names accepted by run_verify.
const std::vector<std::string>& verify_suites();

}  // namespace ges
