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
#ifndef GES_GES_H
#define GES_GES_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define GES_API __declspec(dllexport)
#else
#define GES_API __attribute__((visibility("default")))
#endif

/* Status codes returned by every fallible call. */
typedef enum ges_status {
  GES_OK = 0,
  GES_ERR_NULL_ARGUMENT = 1,
  GES_ERR_USAGE = 2,
  GES_ERR_UNKNOWN_SYSTEM = 3,
  GES_ERR_PARSE = 4,
  GES_ERR_FORCING = 5,
  GES_ERR_DIVERGENCE = 6,
  GES_ERR_UNSUPPORTED = 7,
  GES_ERR_GRID_RESOLUTION = 8,
  GES_ERR_INTERNAL = 9
} ges_status;

typedef enum ges_metric { GES_METRIC_STRONG = 0, GES_METRIC_WEAK = 1 } ges_metric;

typedef struct ges_system ges_system;
typedef struct ges_state ges_state;
typedef struct ges_result ges_result;

GES_API const char* ges_version(void);
GES_API const char* ges_status_name(ges_status status);

/* Message of the last failing call on the calling thread ("" if none). */
GES_API const char* ges_last_error(void);

/* Process exit code for a failed status (64 usage, 65 malformed input, 1 other). */
GES_API int ges_status_exit_code(ges_status status);

GES_API void ges_set_threads(int threads);
GES_API int ges_get_threads(void);

GES_API void ges_string_free(char* s);

/* Systems. config_json may be NULL. */
GES_API ges_status ges_system_create(const char* id, const char* config_json, ges_system** out);
GES_API void ges_system_free(ges_system* sys);
GES_API const char* ges_system_id(const ges_system* sys);
GES_API int ges_system_is_autonomous(const ges_system* sys);
GES_API int ges_system_branch_count(const ges_system* sys, double s, const ges_state* x);

/* Newline-separated registry ids; free with ges_string_free. */
GES_API char* ges_system_ids(void);

/* States, serialized as {"space","idx","val"}. */
GES_API ges_status ges_state_from_json(const char* json, ges_state** out);
GES_API ges_status ges_state_to_json(const ges_state* x, char** out);
GES_API void ges_state_free(ges_state* x);

/* Seed number `index` of the system's phase-space sample at start s for time t. */
GES_API ges_status ges_system_sample(const ges_system* sys, double t, double s, size_t count,
                                     uint64_t seed, size_t index, ges_state** out);

/* The branch-th trajectory through (s, x), evaluated at t >= s. */
GES_API ges_status ges_system_evolve(const ges_system* sys, const ges_state* x, double s, double t,
                                     int branch, ges_state** out);

GES_API ges_status ges_system_distance(const ges_system* sys, ges_metric metric,
                                       const ges_state* a, const ges_state* b, double* out);

/* Commands. command is one of omega, attract, nse, uniform, invariance, or
 * verify; suite is only read for verify. params_json may be NULL. */
GES_API ges_status ges_run(const char* command, const char* suite, const char* params_json,
                           ges_result** out);
GES_API int ges_result_outcome(const ges_result* r);
GES_API const char* ges_result_summary(const ges_result* r);
GES_API size_t ges_result_file_count(const ges_result* r);
GES_API const char* ges_result_file_name(const ges_result* r, size_t i);
GES_API const char* ges_result_file_content(const ges_result* r, size_t i, size_t* length);
GES_API void ges_result_free(ges_result* r);

#ifdef __cplusplus
}
#endif

#endif /* GES_GES_H */
