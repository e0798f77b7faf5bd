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

/* Compiles the public header as C and drives one solve through it. */
#include <stdio.h>

#include "valvepoint/valvepoint.h"

int main(void) {
  static const double records[2 * VP_GENERATOR_FIELDS] = {
      0.002, 8.0, 50.0, 40.0, 0.2, 10.0, 60.0,
      0.004, 7.0, 20.0, 60.0, 0.35, 5.0, 45.0};
  vp_problem* problem = NULL;
  vp_result* result = NULL;
  vp_options options;
  double dispatch[2];
  vp_options_init(&options);
  options.method = VP_METHOD_ADAPTIVE;
  if (vp_problem_create(records, 2, 70.0, "pair", &problem) != VP_OK) {
    fprintf(stderr, "create: %s\n", vp_last_error());
    return 1;
  }
  if (vp_solve(problem, &options, &result) != VP_OK) {
    fprintf(stderr, "solve: %s\n", vp_last_error());
    vp_problem_free(problem);
    return 1;
  }
  vp_result_dispatch(result, dispatch, 2);
  printf("cost %.6f dispatch %.6f %.6f certified %d\n",
         vp_result_total_cost(result), dispatch[0], dispatch[1],
         vp_result_certified(result));
  int ok = vp_result_certified(result) &&
           dispatch[0] + dispatch[1] > 70.0 - 1e-6 &&
           dispatch[0] + dispatch[1] < 70.0 + 1e-6;
  vp_result_free(result);
  vp_problem_free(problem);
  return ok ? 0 : 1;
}
