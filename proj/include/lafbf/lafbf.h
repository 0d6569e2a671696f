/*
   Copyright 2026 The lafbf Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

/*
 * C interface to the lafbf texture synthesis library.
 *
 * Objects are opaque handles created by lafbf_*_create / parse functions and
 * released with the matching *_destroy. Every fallible call returns a
 * lafbf_status; on failure lafbf_last_error() describes the problem (the
 * message is thread-local and valid until the next failing call on the same
 * thread). Handles are immutable after creation and may be shared between
 * threads.
 */

#ifndef LAFBF_H
#define LAFBF_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LAFBF_BUILDING_LIBRARY)
#    define LAFBF_API __declspec(dllexport)
#  else
#    define LAFBF_API __declspec(dllimport)
#  endif
#else
#  define LAFBF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lafbf_status {
    LAFBF_OK = 0,
    LAFBF_ERROR_CONFIG = 2,
    LAFBF_ERROR_INFEASIBLE = 3,
    LAFBF_ERROR_NUMERICAL = 4,
    LAFBF_ERROR_IO = 5,
    LAFBF_ERROR_UNDEFINED_ORIENTATION = 6,
    LAFBF_ERROR_INTERNAL = 7
} lafbf_status;

typedef enum lafbf_format {
    LAFBF_FORMAT_PGM = 0,
    LAFBF_FORMAT_RAW = 1,
    LAFBF_FORMAT_CSV = 2
} lafbf_format;

typedef struct lafbf_params {
    double hurst;        /* (0, 1) */
    double alpha;        /* sector half-width, (0, pi/2] */
    double epsilon;      /* maximal band width, > 0 */
    int32_t grid_order;  /* r; grid side r + 1 must be a power of two */
    int32_t q_max;       /* band candidate bound, 0 = automatic */
    uint64_t seed;
    int32_t regularized; /* nonzero: Gaussian angular weight */
    double sigma;        /* Gaussian standard deviation */
    uint32_t threads;    /* 0 = hardware concurrency; output does not depend on it */
} lafbf_params;

typedef struct lafbf_band {
    int32_t p;
    int32_t q;
    double theta;
    double lambda;
    int64_t cost;
} lafbf_band;

typedef struct lafbf_variogram_row {
    int32_t lag_k1;
    int32_t lag_k2;
    double empirical;
    double theoretical;
    double std_error;
    int64_t n_pairs;
} lafbf_variogram_row;

typedef struct lafbf_orientation lafbf_orientation;
typedef struct lafbf_plan lafbf_plan;
typedef struct lafbf_state lafbf_state;
typedef struct lafbf_grid lafbf_grid;
typedef struct lafbf_report lafbf_report;

LAFBF_API const char* lafbf_version(void);
LAFBF_API const char* lafbf_last_error(void);
LAFBF_API const char* lafbf_status_name(lafbf_status status);

/* r = 255, H = 0.2, alpha = 0.1, epsilon = 0.01, regularized, sigma = alpha, seed 0. */
LAFBF_API void lafbf_params_default(lafbf_params* params);
LAFBF_API lafbf_status lafbf_params_validate(const lafbf_params* params);
LAFBF_API lafbf_status lafbf_format_parse(const char* name, lafbf_format* out);

/* constant:<radians> | v1 | v2 | v3 | raster:<path> | gradient:<path> */
LAFBF_API lafbf_status lafbf_orientation_parse(const char* spec, lafbf_orientation** out);
LAFBF_API lafbf_status lafbf_orientation_eval(const lafbf_orientation* field, double x, double y,
                                              double* angle);
LAFBF_API int lafbf_orientation_is_constant(const lafbf_orientation* field, double* angle);
LAFBF_API void lafbf_orientation_destroy(lafbf_orientation* field);

LAFBF_API lafbf_status lafbf_plan_create(double epsilon, int32_t grid_order, int32_t q_max,
                                         lafbf_plan** out);
LAFBF_API size_t lafbf_plan_size(const lafbf_plan* plan);
LAFBF_API lafbf_status lafbf_plan_band(const lafbf_plan* plan, size_t index, lafbf_band* out);
LAFBF_API int64_t lafbf_plan_total_cost(const lafbf_plan* plan);
LAFBF_API void lafbf_plan_destroy(lafbf_plan* plan);

/* Band plan and FBM lines for params (independent of the orientation). */
LAFBF_API lafbf_status lafbf_state_create(const lafbf_params* params, lafbf_state** out);
LAFBF_API size_t lafbf_state_band_count(const lafbf_state* state);
LAFBF_API void lafbf_state_destroy(lafbf_state* state);

/* Locally anisotropic synthesis; a constant orientation gives the
 * stationary elementary field. */
LAFBF_API lafbf_status lafbf_synthesize(const lafbf_params* params, const lafbf_state* state,
                                        const lafbf_orientation* field, lafbf_grid** out);
LAFBF_API lafbf_status lafbf_synthesize_elementary(const lafbf_params* params,
                                                   const lafbf_state* state, double alpha0,
                                                   lafbf_grid** out);

LAFBF_API int32_t lafbf_grid_rows(const lafbf_grid* grid);
LAFBF_API int32_t lafbf_grid_cols(const lafbf_grid* grid);
/* Row-major values, row k1, column k2. */
LAFBF_API const double* lafbf_grid_data(const lafbf_grid* grid);
LAFBF_API uint64_t lafbf_grid_plan_digest(const lafbf_grid* grid);
LAFBF_API lafbf_status lafbf_grid_write(const lafbf_grid* grid, const char* path,
                                        lafbf_format format, int force);
LAFBF_API lafbf_status lafbf_grid_read_raw(const char* path, lafbf_grid** out);
LAFBF_API lafbf_status lafbf_grid_estimate_hurst(const lafbf_grid* grid, double* out);
LAFBF_API void lafbf_grid_destroy(lafbf_grid* grid);

/* Monte-Carlo variogram over n_seeds syntheses (seeds params->seed + s).
 * local == 0: stationary estimate over all pixel pairs; the orientation
 *             must be constant.
 * local != 0: estimate at base pixel (base_k1, base_k2).
 * lags holds n_lags (d_k1, d_k2) pairs; rows receives n_lags entries. The
 * theoretical column is the exact variogram at lag / r for the orientation
 * at the base pixel (stationary: the constant orientation). */
LAFBF_API lafbf_status lafbf_variogram(const lafbf_params* params, const lafbf_orientation* field,
                                       int local, int32_t base_k1, int32_t base_k2,
                                       const int32_t* lags, size_t n_lags, int32_t n_seeds,
                                       lafbf_variogram_row* rows);

LAFBF_API lafbf_status lafbf_validate(uint64_t seed, int32_t seeds, int32_t fbm_replicates,
                                      uint32_t threads, lafbf_report** out);
LAFBF_API size_t lafbf_report_size(const lafbf_report* report);
LAFBF_API lafbf_status lafbf_report_entry(const lafbf_report* report, size_t index,
                                          const char** name, int* passed, const char** detail);
LAFBF_API void lafbf_report_destroy(lafbf_report* report);

#ifdef __cplusplus
}
#endif

#endif /* LAFBF_H */
