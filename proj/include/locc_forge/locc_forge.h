// Copyright 2026 The locc-forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LOCC_FORGE_H
#define LOCC_FORGE_H

#include <stddef.h>
#include <stdint.h>

#if defined(LOCC_FORGE_BUILDING)
#define LOCC_FORGE_API __attribute__((visibility("default")))
#else
#define LOCC_FORGE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/// Status codes double as the CLI exit codes.
typedef enum locc_status {
    LOCC_OK = 0,
    LOCC_INPUT_ERROR = 2,
    LOCC_IMPOSSIBLE = 3,
    LOCC_RESOURCE_CAP = 4,
    LOCC_INTERNAL = 5,
} locc_status;

typedef struct locc_instance locc_instance;
typedef struct locc_report locc_report;

/// Optional overrides. A field is used only when its has_* flag is nonzero.
typedef struct locc_options {
    int has_tol;
    double tol;
    int has_copies;
    size_t copies;
    int has_d_max;
    size_t d_max;
    int has_resolution;
    double resolution;
    int has_seed;
    uint64_t seed;
    /// JSON text of a plan for "simulate"; NULL means compute one.
    const char *plan_json;
} locc_options;

LOCC_FORGE_API void locc_options_init(locc_options *options);
LOCC_FORGE_API const char *locc_version(void);

/// Message of the most recent failure on the calling thread ("" if none).
LOCC_FORGE_API const char *locc_last_error(void);

LOCC_FORGE_API locc_status locc_instance_parse(const char *json_text, locc_instance **out);
LOCC_FORGE_API void locc_instance_free(locc_instance *instance);

/// Runs one command. On return *out is always set (even on failure) unless
/// the arguments themselves are invalid; the report carries the exit code.
LOCC_FORGE_API locc_status locc_run(const char *command, const locc_instance *instance,
                                    const locc_options *options, locc_report **out);
/// Pretty-printed JSON owned by the report.
LOCC_FORGE_API const char *locc_report_json(const locc_report *report);
LOCC_FORGE_API const char *locc_report_summary(const locc_report *report);
LOCC_FORGE_API int locc_report_exit_code(const locc_report *report);
LOCC_FORGE_API void locc_report_free(locc_report *report);

/// Numeric entry points on raw vectors (padded with zeros to a common length).
LOCC_FORGE_API locc_status locc_is_majorized(const double *lam, size_t lam_len, const double *mu, size_t mu_len,
                                             int *out);
LOCC_FORGE_API locc_status locc_pmax(const double *lam, size_t lam_len, const double *mu, size_t mu_len,
                                     double *out);

#ifdef __cplusplus
}
#endif

#endif
