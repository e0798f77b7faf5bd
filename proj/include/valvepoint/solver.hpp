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

#ifndef VALVEPOINT_SOLVER_HPP_
#define VALVEPOINT_SOLVER_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "valvepoint/envelope.hpp"
#include "valvepoint/model.hpp"
#include "valvepoint/surrogate.hpp"

namespace valvepoint {

// Minimizer of sum_i fns[i](p_i) subject to sum_i p_i = demand and
// p_i in the domain of fns[i], with the multiplier of the balance row.
struct SeparableSolution {
  bool feasible = false;
  DispatchVector p;
  double lambda = 0.0;
  double value = 0.0;
};

SeparableSolution SolveSeparableConvex(std::span<const ConvexEnvelope> fns,
                                       double demand);

struct SolverConfig {
  double gap_tol = 1e-6;  // $/h, absolute
  std::int64_t node_cap = 1'000'000;
  // Parallel mode evaluates nodes in fixed-size batches; results do not
  // depend on the worker count.
  bool parallel = false;
  int workers = 1;
  // When set, receives the global lower bound (best open node) at every
  // branching round.
  std::vector<double>* bound_trace = nullptr;
  // When set, sees every continuous subproblem the search solves: node
  // relaxations and the piece-restricted QPs. Called concurrently in
  // parallel mode.
  std::function<void(std::span<const ConvexEnvelope>, double,
                     const SeparableSolution&)>
      relaxation_observer;
};

struct SolveReport {
  DispatchVector p;
  double surrogate_value = 0.0;  // g(p)
  double true_cost = 0.0;        // f(p)
  double certified_bound = 0.0;  // lower bound on min g
  double absolute_gap = 0.0;     // surrogate_value - certified_bound
  bool certified = false;
  std::int64_t nodes_explored = 0;
  double wall_time = 0.0;  // s
  double cpu_time = 0.0;   // s
};

// Globally minimizes the separable piecewise-quadratic surrogate
// sum_i Compile(g_i, pwls[i])(p_i) over the dispatch polytope by spatial
// branch-and-bound on per-unit intervals with convex-envelope relaxations.
// A warm start, if given, seeds the incumbent.
SolveReport SolveSurrogate(const DispatchProblem& problem,
                           std::span<const PiecewiseLinear> pwls,
                           const SolverConfig& cfg = {},
                           const DispatchVector* warm_start = nullptr);

// Writes the mixed-integer model for the given surrogates in LP format.
// Identity surrogates need only the sawtooth variables; other families add
// the segment-selection variables.
void WriteLp(const DispatchProblem& problem,
             std::span<const PiecewiseLinear> pwls, std::ostream& out);
void ExportLp(const DispatchProblem& problem,
              std::span<const PiecewiseLinear> pwls, const std::string& path);

}  // namespace valvepoint

#endif  // VALVEPOINT_SOLVER_HPP_
