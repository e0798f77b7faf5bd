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

#include <algorithm>
#include <cmath>

#include "valvepoint/solver.hpp"

namespace valvepoint {

SeparableSolution SolveSeparableConvex(std::span<const ConvexEnvelope> fns,
                                       double demand) {
  SeparableSolution sol;
  const std::size_t n = fns.size();
  if (n == 0) return sol;
  double total_lo = 0.0, total_hi = 0.0;
  for (const ConvexEnvelope& f : fns) {
    total_lo += f.lo();
    total_hi += f.hi();
  }
  const double slack = 1e-9 * std::max(1.0, std::abs(demand));
  if (demand < total_lo - slack || demand > total_hi + slack) return sol;

  std::vector<double> knots;
  for (const ConvexEnvelope& f : fns) f.AppendSlopes(knots);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  auto sum_left = [&](double lambda) {
    double s = 0.0;
    for (const ConvexEnvelope& f : fns) s += f.ArgminLeft(lambda);
    return s;
  };
  auto sum_right = [&](double lambda) {
    double s = 0.0;
    for (const ConvexEnvelope& f : fns) s += f.ArgminRight(lambda);
    return s;
  };

  // First knot whose right-hand supply reaches the demand.
  std::size_t lo_idx = 0, hi_idx = knots.size();
  while (lo_idx < hi_idx) {
    const std::size_t mid = (lo_idx + hi_idx) / 2;
    if (sum_right(knots[mid]) >= demand) hi_idx = mid;
    else lo_idx = mid + 1;
  }

  sol.p.resize(n);
  if (lo_idx == knots.size()) {
    sol.lambda = knots.back();
    for (std::size_t i = 0; i < n; ++i) sol.p[i] = fns[i].hi();
  } else if (lo_idx == 0 || sum_left(knots[lo_idx]) <= demand) {
    // Demand met at a knot: flat pieces absorb the remainder.
    sol.lambda = knots[lo_idx];
    for (std::size_t i = 0; i < n; ++i) sol.p[i] = fns[i].ArgminLeft(sol.lambda);
  } else {
    // Strictly between two knots every p_i(lambda) is affine.
    const double l0 = knots[lo_idx - 1], l1 = knots[lo_idx];
    const double s0 = sum_right(l0), s1 = sum_left(l1);
    const double w = s1 > s0 ? (demand - s0) / (s1 - s0) : 0.5;
    sol.lambda = std::clamp(l0 + w * (l1 - l0), l0, l1);
    for (std::size_t i = 0; i < n; ++i) sol.p[i] = fns[i].ArgminLeft(sol.lambda);
  }

  // Spread the residual in index order, first over units whose
  // subdifferential admits lambda across their whole slack, then anywhere.
  double residual = demand;
  for (double v : sol.p) residual -= v;
  for (int pass = 0; pass < 2 && residual != 0.0; ++pass) {
    for (std::size_t i = 0; i < n && residual != 0.0; ++i) {
      const ConvexEnvelope& f = fns[i];
      double target = residual > 0.0 ? f.ArgminRight(sol.lambda)
                                     : f.ArgminLeft(sol.lambda);
      if (pass == 1) target = residual > 0.0 ? f.hi() : f.lo();
      const double step = residual > 0.0
                              ? std::min(residual, std::max(0.0, target - sol.p[i]))
                              : std::max(residual, std::min(0.0, target - sol.p[i]));
      sol.p[i] += step;
      residual -= step;
    }
  }
  sol.value = 0.0;
  for (std::size_t i = 0; i < n; ++i) sol.value += fns[i](sol.p[i]);
  sol.feasible = true;
  return sol;
}

}  // namespace valvepoint
