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

#ifndef VALVEPOINT_ADAPTIVE_HPP_
#define VALVEPOINT_ADAPTIVE_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "valvepoint/solver.hpp"

namespace valvepoint {

struct AdaptiveConfig {
  double epsilon = 1e-3;  // $/h
  int max_iterations = 100;
  double merge_tol = kDefaultMergeTolerance;
  SolverConfig solver;
};

struct IterationRecord {
  int iteration = 0;
  double surrogate_optimum = 0.0;  // min of the chord surrogate
  double lower_bound = 0.0;        // certified bound on that minimum
  double true_cost = 0.0;          // f at the surrogate minimizer
  double delta = 0.0;              // true_cost - surrogate_optimum
  std::vector<std::size_t> breakpoint_counts;
  std::int64_t nodes = 0;
  DispatchVector p;
};

struct AdaptiveResult {
  SolveReport report;
  std::vector<IterationRecord> trace;
  bool converged = false;
};

// Chord under-approximation loop. Starts every unit with breakpoints
// {0, pi/2}, solves the surrogate to global optimality, then adds each
// unit's sawtooth coordinate at the minimizer as a new breakpoint. Stops
// once f(p) minus the certified surrogate bound drops below epsilon, which
// makes p epsilon-optimal for the true cost.
AdaptiveResult AdaptiveSolve(const DispatchProblem& problem,
                             const AdaptiveConfig& cfg = {});

// Tabular text: iteration, g*, f, delta, breakpoint counts.
std::string FormatTrace(const std::vector<IterationRecord>& trace);

}  // namespace valvepoint

#endif  // VALVEPOINT_ADAPTIVE_HPP_
