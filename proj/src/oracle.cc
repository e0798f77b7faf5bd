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

#include "valvepoint/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "valvepoint/solver.hpp"

namespace valvepoint::oracle {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// lo, lo + step, ..., plus hi itself when the grid does not land on it.
std::vector<double> GridPoints(double lo, double hi, double step) {
  std::vector<double> pts;
  if (hi < lo) return pts;
  const auto count = static_cast<long long>(std::floor((hi - lo) / step + 1e-9));
  pts.reserve(static_cast<std::size_t>(count) + 2);
  for (long long k = 0; k <= count; ++k) {
    pts.push_back(lo + static_cast<double>(k) * step);
  }
  if (hi - pts.back() > 1e-9 * step) pts.push_back(hi);
  return pts;
}

}  // namespace

OraclePoint BruteForceTrue(const DispatchProblem& problem, GridSpec grid) {
  const std::size_t n = problem.size();
  if (n == 0 || n > 3) throw Error("brute force supports 1 to 3 units");
  if (!(grid.step > 0.0)) throw Error("grid step must be positive");
  const auto& g = problem.generators;
  const double demand = problem.demand;
  const double tol = 1e-9 * std::max(1.0, demand);
  OraclePoint best{{}, kInf};

  auto last_unit = [&](double rest, std::size_t idx) -> double {
    // Output of the balancing unit, or NaN when outside its box.
    const double v = demand - rest;
    if (v < g[idx].p_min - tol || v > g[idx].p_max + tol) {
      return std::numeric_limits<double>::quiet_NaN();
    }
    return std::clamp(v, g[idx].p_min, g[idx].p_max);
  };

  if (n == 1) {
    const double v = last_unit(0.0, 0);
    if (std::isnan(v)) throw Error("empty feasible grid");
    return {{v}, UnitCost(g[0], v)};
  }
  if (n == 2) {
    const double lo = std::max(g[0].p_min, demand - g[1].p_max);
    const double hi = std::min(g[0].p_max, demand - g[1].p_min);
    for (double p1 : GridPoints(lo, hi, grid.step)) {
      const double p2 = last_unit(p1, 1);
      if (std::isnan(p2)) continue;
      const double f = UnitCost(g[0], p1) + UnitCost(g[1], p2);
      if (f < best.value) best = {{p1, p2}, f};
    }
  } else {
    const double lo1 = std::max(g[0].p_min, demand - g[1].p_max - g[2].p_max);
    const double hi1 = std::min(g[0].p_max, demand - g[1].p_min - g[2].p_min);
    const std::vector<double> grid2 = GridPoints(g[1].p_min, g[1].p_max, grid.step);
    std::vector<double> cost2(grid2.size());
    for (std::size_t j = 0; j < grid2.size(); ++j) cost2[j] = UnitCost(g[1], grid2[j]);
    for (double p1 : GridPoints(lo1, hi1, grid.step)) {
      const double f1 = UnitCost(g[0], p1);
      // Only p2 values that leave unit 3 inside its box.
      const double lo2 = demand - p1 - g[2].p_max - tol;
      const double hi2 = demand - p1 - g[2].p_min + tol;
      auto try_p2 = [&](double p2, double f2) {
        const double p3 = last_unit(p1 + p2, 2);
        if (std::isnan(p3)) return;
        const double f = f1 + f2 + UnitCost(g[2], p3);
        if (f < best.value) best = {{p1, p2, p3}, f};
      };
      auto first = std::lower_bound(grid2.begin(), grid2.end(), lo2);
      for (auto it = first; it != grid2.end() && *it <= hi2; ++it) {
        try_p2(*it, cost2[it - grid2.begin()]);
      }
      // The range ends put unit 3 on a bound; a narrow range may hold no
      // grid point at all.
      for (double p2 : {lo2 + tol, hi2 - tol}) {
        if (p2 >= g[1].p_min && p2 <= g[1].p_max) try_p2(p2, UnitCost(g[1], p2));
      }
    }
  }
  if (best.p.empty()) throw Error("empty feasible grid");
  return best;
}

OraclePoint EnumeratePieces(const DispatchProblem& problem,
                            std::span<const PiecewiseLinear> pwls,
                            long long max_combinations) {
  const std::size_t n = problem.size();
  if (pwls.size() != n) throw Error("need one surrogate per generator");
  std::vector<PiecewiseQuadratic> compiled;
  long long combos = 1;
  for (std::size_t i = 0; i < n; ++i) {
    compiled.push_back(Compile(problem.generators[i], pwls[i]));
    combos *= static_cast<long long>(compiled.back().pieces.size());
    if (combos > max_combinations) {
      throw Error("piece enumeration exceeds " + std::to_string(max_combinations) +
                  " combinations");
    }
  }

  OraclePoint best{{}, kInf};
  std::vector<std::size_t> choice(n, 0);
  std::vector<ConvexEnvelope> fns(n);
  for (;;) {
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const QuadPiece& piece = compiled[i].pieces[choice[i]];
      lo += piece.lo;
      hi += piece.hi;
    }
    const double slack = 1e-9 * std::max(1.0, problem.demand);
    if (lo <= problem.demand + slack && hi >= problem.demand - slack) {
      for (std::size_t i = 0; i < n; ++i) {
        fns[i] = ConvexEnvelope(PiecewiseQuadratic{{compiled[i].pieces[choice[i]]}});
      }
      SeparableSolution sol = SolveSeparableConvex(fns, problem.demand);
      if (sol.feasible && sol.value < best.value) {
        best = {std::move(sol.p), sol.value};
      }
    }
    std::size_t i = 0;
    while (i < n && ++choice[i] == compiled[i].pieces.size()) choice[i++] = 0;
    if (i == n) break;
  }
  if (best.p.empty()) throw Error("no feasible piece combination");
  return best;
}

}  // namespace valvepoint::oracle
