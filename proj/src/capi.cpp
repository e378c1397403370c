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

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "ges/commands.hpp"
#include "ges/errors.hpp"
#include "ges/evolution.hpp"
#include "ges/io.hpp"
#include "ges/parallel.hpp"
#include "ges/registry.hpp"

struct ges_system {
  std::unique_ptr<ges::TrajectoryFamily> fam;
};

struct ges_state {
  ges::CoeffState x;
};

struct ges_result {
  ges::CommandResult r;
};

namespace {

thread_local std::string g_last_error;

template <class Fn>
ges_status guarded(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return GES_OK;
  } catch (const ges::UnknownSystemError& e) {
    g_last_error = e.what();
    return GES_ERR_UNKNOWN_SYSTEM;
  } catch (const ges::UsageError& e) {
    g_last_error = e.what();
    return GES_ERR_USAGE;
  } catch (const ges::ForcingError& e) {
    g_last_error = e.what();
    return GES_ERR_FORCING;
  } catch (const ges::ParseError& e) {
    g_last_error = e.what();
    return GES_ERR_PARSE;
  } catch (const ges::DivergenceError& e) {
    g_last_error = e.what();
    return GES_ERR_DIVERGENCE;
  } catch (const ges::UnsupportedError& e) {
    g_last_error = e.what();
    return GES_ERR_UNSUPPORTED;
  } catch (const ges::GridResolutionError& e) {
    g_last_error = e.what();
    return GES_ERR_GRID_RESOLUTION;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return GES_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return GES_ERR_INTERNAL;
  }
}

ges_status null_arg(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return GES_ERR_NULL_ARGUMENT;
}

ges::Json parse_params(const char* text) {
  if (text == nullptr || *text == '\0') return ges::Json::object();
  try {
    return ges::Json::parse(text);
  } catch (const ges::Json::exception& e) {
    throw ges::ParseError(std::string("invalid JSON: ") + e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* ges_version(void) { return "0.1.0"; }

const char* ges_status_name(ges_status status) {
  switch (status) {
    case GES_OK: return "ok";
    case GES_ERR_NULL_ARGUMENT: return "null_argument";
    case GES_ERR_USAGE: return "usage";
    case GES_ERR_UNKNOWN_SYSTEM: return "unknown_system";
    case GES_ERR_PARSE: return "parse";
    case GES_ERR_FORCING: return "forcing";
    case GES_ERR_DIVERGENCE: return "divergence";
    case GES_ERR_UNSUPPORTED: return "unsupported";
    case GES_ERR_GRID_RESOLUTION: return "grid_resolution";
    case GES_ERR_INTERNAL: return "internal";
  }
  return "invalid";
}

const char* ges_last_error(void) { return g_last_error.c_str(); }

int ges_status_exit_code(ges_status status) {
  switch (status) {
    case GES_OK: return ges::kExitOk;
    case GES_ERR_NULL_ARGUMENT:
    case GES_ERR_USAGE:
    case GES_ERR_UNKNOWN_SYSTEM: return ges::kExitUsage;
    case GES_ERR_PARSE:
    case GES_ERR_FORCING: return ges::kExitData;
    default: return ges::kExitFailure;
  }
}

void ges_set_threads(int threads) { ges::set_worker_count(threads); }
int ges_get_threads(void) { return ges::worker_count(); }

void ges_string_free(char* s) { delete[] s; }

ges_status ges_system_create(const char* id, const char* config_json, ges_system** out) {
  if (id == nullptr) return null_arg("id");
  if (out == nullptr) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    auto fam = ges::make_system(id, parse_params(config_json));
    *out = new ges_system{std::move(fam)};
  });
}

void ges_system_free(ges_system* sys) { delete sys; }

const char* ges_system_id(const ges_system* sys) {
  return sys == nullptr ? "" : sys->fam->system_id().c_str();
}

int ges_system_is_autonomous(const ges_system* sys) {
  return sys != nullptr && sys->fam->is_autonomous() ? 1 : 0;
}

int ges_system_branch_count(const ges_system* sys, double s, const ges_state* x) {
  if (sys == nullptr || x == nullptr) return -1;
  int n = -1;
  if (guarded([&] { n = sys->fam->branch_count(s, x->x); }) != GES_OK) return -1;
  return n;
}

char* ges_system_ids(void) {
  std::string all;
  for (const auto& id : ges::system_ids()) {
    if (!all.empty()) all += '\n';
    all += id;
  }
  return dup_string(all);
}

ges_status ges_state_from_json(const char* json, ges_state** out) {
  if (json == nullptr) return null_arg("json");
  if (out == nullptr) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new ges_state{ges::state_from_json(parse_params(json))}; });
}

ges_status ges_state_to_json(const ges_state* x, char** out) {
  if (x == nullptr) return null_arg("x");
  if (out == nullptr) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = dup_string(ges::state_to_json(x->x).dump()); });
}

void ges_state_free(ges_state* x) { delete x; }

ges_status ges_system_sample(const ges_system* sys, double t, double s, size_t count,
                             uint64_t seed, size_t index, ges_state** out) {
  if (sys == nullptr) return null_arg("sys");
  if (out == nullptr) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    auto sample = sys->fam->sample_phase_space(t, s, count, seed);
    if (index >= sample.size()) throw ges::UsageError("sample index out of range");
    *out = new ges_state{std::move(sample[index])};
  });
}

ges_status ges_system_evolve(const ges_system* sys, const ges_state* x, double s, double t,
                             int branch, ges_state** out) {
  if (sys == nullptr) return null_arg("sys");
  if (x == nullptr) return null_arg("x");
  if (out == nullptr) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new ges_state{sys->fam->evolve_to(s, x->x, t, branch)}; });
}

ges_status ges_system_distance(const ges_system* sys, ges_metric metric, const ges_state* a,
                               const ges_state* b, double* out) {
  if (sys == nullptr) return null_arg("sys");
  if (a == nullptr || b == nullptr) return null_arg("state");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    auto kind = metric == GES_METRIC_WEAK ? ges::MetricKind::kWeak : ges::MetricKind::kStrong;
    *out = sys->fam->space().dist(kind, a->x, b->x);
  });
}

ges_status ges_run(const char* command, const char* suite, const char* params_json,
                   ges_result** out) {
  if (command == nullptr) return null_arg("command");
  if (out == nullptr) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    const std::string cmd = command;
    const ges::Json params = parse_params(params_json);
    ges::CommandResult r;
    if (cmd == "omega") {
      r = ges::run_omega(params);
    } else if (cmd == "attract") {
      r = ges::run_attract(params);
    } else if (cmd == "nse") {
      r = ges::run_nse(params);
    } else if (cmd == "uniform") {
      r = ges::run_uniform(params);
    } else if (cmd == "invariance") {
      r = ges::run_invariance(params);
    } else if (cmd == "verify") {
      r = ges::run_verify(suite == nullptr ? "all" : suite, params);
    } else {
      throw ges::UsageError("unknown command: " + cmd);
    }
    *out = new ges_result{std::move(r)};
  });
}

int ges_result_outcome(const ges_result* r) { return r == nullptr ? -1 : r->r.outcome; }

const char* ges_result_summary(const ges_result* r) {
  return r == nullptr ? "" : r->r.summary.c_str();
}

size_t ges_result_file_count(const ges_result* r) { return r == nullptr ? 0 : r->r.files.size(); }

const char* ges_result_file_name(const ges_result* r, size_t i) {
  if (r == nullptr || i >= r->r.files.size()) return nullptr;
  return r->r.files[i].first.c_str();
}

const char* ges_result_file_content(const ges_result* r, size_t i, size_t* length) {
  if (r == nullptr || i >= r->r.files.size()) return nullptr;
  if (length != nullptr) *length = r->r.files[i].second.size();
  return r->r.files[i].second.c_str();
}

void ges_result_free(ges_result* r) { delete r; }

}  // extern "C"
