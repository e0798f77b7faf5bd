// Copyright 2026 The Valvepoint Authors
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

/* C interface to the valvepoint dispatch solver.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns a vp_status; on
 * failure vp_last_error() describes the problem for the calling thread. */
#ifndef VALVEPOINT_VALVEPOINT_H_
#define VALVEPOINT_VALVEPOINT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(VALVEPOINT_BUILDING_LIBRARY)
#define VP_API __attribute__((visibility("default")))
#else
#define VP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vp_status {
  VP_OK = 0,
  VP_ERR_INVALID_ARGUMENT = 1,
  VP_ERR_PARSE = 2,
  VP_ERR_INFEASIBLE = 3,
  VP_ERR_IO = 4,
  VP_ERR_INTERNAL = 5
} vp_status;

typedef enum vp_method {
  VP_METHOD_SIMPLE = 0,
  VP_METHOD_TANGENT = 1,
  VP_METHOD_ADAPTIVE = 2
} vp_method;

typedef enum vp_format {
  VP_FORMAT_HUMAN = 0,
  VP_FORMAT_MACHINE = 1,
  VP_FORMAT_MACHINE_TIMED = 2,
  VP_FORMAT_TRACE = 3
} vp_format;

typedef struct vp_problem vp_problem;
typedef struct vp_result vp_result;

typedef struct vp_options {
  vp_method method;
  double theta1;          /* tangent points, radians */
  double theta2;
  double epsilon;         /* adaptive stopping tolerance, $/h */
  int max_iterations;     /* adaptive */
  double merge_tol;       /* breakpoint dedup, radians */
  double gap_tol;         /* branch-and-bound absolute gap, $/h */
  int64_t node_cap;
  int parallel;           /* nonzero: batched node evaluation */
  int workers;            /* threads in parallel mode */
} vp_options;

/* Generator record layout for vp_problem_create: a b c d e p_min p_max. */
#define VP_GENERATOR_FIELDS 7

VP_API const char* vp_last_error(void);
VP_API const char* vp_status_string(vp_status status);
VP_API void vp_options_init(vp_options* options);

VP_API vp_status vp_problem_load_file(const char* path, vp_problem** out);
VP_API vp_status vp_problem_load_text(const char* text, const char* name,
                                      vp_problem** out);
VP_API vp_status vp_problem_create(const double* records, size_t units,
                                   double demand, const char* name,
                                   vp_problem** out);
VP_API void vp_problem_free(vp_problem* problem);

VP_API size_t vp_problem_units(const vp_problem* problem);
VP_API double vp_problem_demand(const vp_problem* problem);
VP_API const char* vp_problem_name(const vp_problem* problem);
VP_API vp_status vp_problem_total_cost(const vp_problem* problem,
                                       const double* dispatch, size_t units,
                                       double* cost);
VP_API double vp_problem_lipschitz(const vp_problem* problem);
/* Writes at most capacity bytes including the terminator; *needed receives
 * the full length plus one. */
VP_API vp_status vp_problem_serialize(const vp_problem* problem, char* buffer,
                                      size_t capacity, size_t* needed);

VP_API vp_status vp_solve(const vp_problem* problem, const vp_options* options,
                          vp_result** out);
VP_API void vp_result_free(vp_result* result);

VP_API vp_status vp_result_dispatch(const vp_result* result, double* dispatch,
                                    size_t units);
VP_API double vp_result_total_cost(const vp_result* result);
VP_API double vp_result_surrogate_value(const vp_result* result);
VP_API double vp_result_certified_bound(const vp_result* result);
VP_API double vp_result_gap(const vp_result* result);
VP_API int vp_result_certified(const vp_result* result);
VP_API int64_t vp_result_nodes(const vp_result* result);
/* Surrogate solves performed: 1 for simple and tangent. */
VP_API size_t vp_result_iterations(const vp_result* result);
VP_API double vp_result_wall_time(const vp_result* result);
VP_API double vp_result_cpu_time(const vp_result* result);
/* Same buffer contract as vp_problem_serialize. */
VP_API vp_status vp_result_format(const vp_result* result, vp_format format,
                                  char* buffer, size_t capacity,
                                  size_t* needed);

/* Writes the mixed-integer surrogate model for options->method in LP format. */
VP_API vp_status vp_export_lp(const vp_problem* problem,
                              const vp_options* options, const char* path);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* VALVEPOINT_VALVEPOINT_H_ */
