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

#include <stdexcept>
#include <string>

namespace ges {

/// Caller violated an operation's precondition (mismatched spaces, empty sets, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// No system is registered under the requested id.
class UnknownSystemError : public UsageError {
 public:
  using UsageError::UsageError;
};

/// Malformed JSON input or schema mismatch.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A trajectory left the admissible region (norm above 10x the ball radius).
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested check needs a capability the system does not provide.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed forcing profile (a ParseError with its own exit code).
class ForcingError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// The heat frequency grid cannot resolve the requested construction.
class GridResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ges
