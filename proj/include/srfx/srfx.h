// Copyright 2026 The srfx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SRFX_SRFX_H
#define SRFX_SRFX_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SRFX_BUILDING)
#    define SRFX_API __declspec(dllexport)
#  else
#    define SRFX_API __declspec(dllimport)
#  endif
#else
#  define SRFX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes. */
typedef int srfx_status;
#define SRFX_OK 0
#define SRFX_ERR_CONFIG 1
#define SRFX_ERR_DATA 2
#define SRFX_ERR_RUNTIME 3

/* Message for the last failing call on this thread; "" after success. */
SRFX_API const char* srfx_last_error(void);
SRFX_API const char* srfx_version(void);

typedef struct srfx_expr srfx_expr;
typedef struct srfx_lut srfx_lut;
typedef struct srfx_cost_tables srfx_cost_tables;

#define SRFX_OVERFLOW_WRAP 0
#define SRFX_OVERFLOW_SATURATE 1
#define SRFX_ROUND_TRUNCATE 0
#define SRFX_ROUND_NEAREST 1

typedef struct srfx_fixed_spec {
    int total_bits;
    int int_bits;
    int overflow;
    int rounding;
} srfx_fixed_spec;

SRFX_API srfx_status srfx_quantize(double x, const srfx_fixed_spec* spec, double* out);

/* Expressions. Names x0, x1, ... index features. */
SRFX_API srfx_status srfx_expr_parse(const char* text, size_t n_features, srfx_expr** out);
SRFX_API void srfx_expr_free(srfx_expr* e);
/* Copies the text (truncated to cap) and sets *needed to its full length
 * including the terminating zero. */
SRFX_API srfx_status srfx_expr_format(const srfx_expr* e, char* buf, size_t cap, size_t* needed);
SRFX_API srfx_status srfx_expr_complexity(const srfx_expr* e, int* out); /* unit weights */
SRFX_API srfx_status srfx_expr_eval(const srfx_expr* e, const double* x, size_t n_features, double* out);
/* luts may be NULL for math mode; otherwise an array of n_luts tables. */
SRFX_API srfx_status srfx_expr_eval_fixed(const srfx_expr* e, const double* x, size_t n_features,
                                          const srfx_fixed_spec* spec, const srfx_lut* const* luts, size_t n_luts,
                                          double* out);

/* Lookup tables. func is an operator name such as "sin". */
SRFX_API srfx_status srfx_lut_create(const char* func, double range_start, double range_end, size_t size,
                                     const srfx_fixed_spec* value_spec, srfx_lut** out);
SRFX_API void srfx_lut_free(srfx_lut* t);
SRFX_API srfx_status srfx_lut_eval(const srfx_lut* t, double x, double* out);
SRFX_API srfx_status srfx_lut_size(const srfx_lut* t, size_t* out);

/* Cost tables. path "builtin" selects the shipped table. */
SRFX_API srfx_status srfx_cost_tables_load(const char* path, srfx_cost_tables** out);
SRFX_API void srfx_cost_tables_free(srfx_cost_tables* t);

typedef struct srfx_cost {
    int latency_cycles;
    double latency_ns;
    int dsp;
    int lut;
} srfx_cost;

/* lut_size 0 estimates math mode. */
SRFX_API srfx_status srfx_cost_estimate(const srfx_cost_tables* t, const srfx_expr* e, const srfx_fixed_spec* spec,
                                        size_t lut_size, srfx_cost* out);

/* Commands. Written paths are reported through the log callback as
 * "wrote <path>". */
typedef void (*srfx_log_fn)(const char* message, void* user);

typedef struct srfx_run_options {
    const char* out_dir; /* NULL keeps the config's directory */
    int has_seed;
    uint64_t seed;
    srfx_log_fn log;
    void* log_user;
} srfx_run_options;

SRFX_API srfx_status srfx_cmd_search(const char* config_path, const srfx_run_options* opt);
SRFX_API srfx_status srfx_cmd_eval(const char* config_path, const char* model_path, const srfx_run_options* opt);
SRFX_API srfx_status srfx_cmd_sweep(const char* config_path, const srfx_run_options* opt);
/* range is "[a, b; n]". */
SRFX_API srfx_status srfx_cmd_lut_report(const char* func, const char* range, const srfx_fixed_spec* spec,
                                         size_t grid_points, const srfx_run_options* opt);
SRFX_API srfx_status srfx_cmd_complexity_map(const char* cost_table, const srfx_fixed_spec* spec, const char* out_path,
                                             const srfx_run_options* opt);
SRFX_API srfx_status srfx_cmd_report(const char* name, const char* config_path, const srfx_run_options* opt);

#ifdef __cplusplus
}
#endif

#endif
