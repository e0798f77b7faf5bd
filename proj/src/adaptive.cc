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

#include "valvepoint/adaptive.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>

namespace valvepoint {

AdaptiveResult AdaptiveSolve(const DispatchProblem& problem,
                             const AdaptiveConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) throw Error("epsilon must be positive");
  if (cfg.max_iterations < 1) throw Error("max_iterations must be >= 1");
  const auto wall_start = std::chrono::steady_clock::now();
  const std::clock_t cpu_start = std::clock();
  const std::size_t n = problem.size();

  std::vector<std::vector<double>> breakpoints(n, {0.0, kHalfPi});
  AdaptiveResult result;
  std::int64_t nodes = 0;
  DispatchVector warm;
  std::size_t best = 0;
  for (int m = 1; m <= cfg.max_iterations; ++m) {
    std::vector<PiecewiseLinear> pwls;
    pwls.reserve(n);
    for (const auto& bp : breakpoints) pwls.push_back(ChordPwl(bp));
    SolveReport r = SolveSurrogate(problem, pwls, cfg.solver,
                                   warm.empty() ? nullptr : &warm);
    nodes += r.nodes_explored;

    IterationRecord rec;
    rec.iteration = m;
    rec.surrogate_optimum = r.surrogate_value;
    rec.lower_bound = r.certified_bound;
    rec.true_cost = r.true_cost;
    rec.delta = r.true_cost - r.surrogate_value;
    rec.nodes = r.nodes_explored;
    rec.p = r.p;
    for (const auto& bp : breakpoints) rec.breakpoint_counts.push_back(bp.size());
    result.trace.push_back(std::move(rec));
    const IterationRecord& last = result.trace.back();
    if (last.true_cost < result.trace[best].true_cost) {
      best = result.trace.size() - 1;
    }

    // The bound is a valid lower bound on the true optimum, so this is the
    // certificate actually delivered to the caller.
    const bool certified = r.certified;
    result.report = r;
    if (certified && last.true_cost - last.lower_bound < cfg.epsilon) {
      result.converged = true;
      best = result.trace.size() - 1;
      break;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Generator& g = problem.generators[i];
      const double t = Sawtooth(g.e * (last.p[i] - g.p_min)).t;
      breakpoints[i] = Refine(std::move(breakpoints[i]), t, cfg.merge_tol);
    }
    warm = last.p;
  }

  const IterationRecord& pick = result.trace[best];
  SolveReport& report = result.report;
  report.p = pick.p;
  report.true_cost = pick.true_cost;
  report.surrogate_value = pick.surrogate_optimum;
  // Every iteration's bound is a valid lower bound on the true optimum; the
  // sequence is nondecreasing so the last is the tightest.
  report.certified_bound = result.trace.back().lower_bound;
  report.absolute_gap = report.true_cost - report.certified_bound;
  report.certified = result.converged;
  report.nodes_explored = nodes;
  report.wall_time = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - wall_start)
                         .count();
  report.cpu_time =
      static_cast<double>(std::clock() - cpu_start) / CLOCKS_PER_SEC;
  return result;
}

std::string FormatTrace(const std::vector<IterationRecord>& trace) {
  std::string out = "iteration\tsurrogate_optimum\ttrue_cost\tdelta\tnodes\tbreakpoints\n";
  char buf[160];
  for (const IterationRecord& r : trace) {
    std::snprintf(buf, sizeof(buf), "%d\t%.6f\t%.6f\t%.6e\t%lld\t", r.iteration,
                  r.surrogate_optimum, r.true_cost, r.delta,
                  static_cast<long long>(r.nodes));
    out += buf;
    for (std::size_t i = 0; i < r.breakpoint_counts.size(); ++i) {
      if (i > 0) out += ',';
      out += std::to_string(r.breakpoint_counts[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace valvepoint
