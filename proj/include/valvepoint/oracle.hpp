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

#ifndef VALVEPOINT_ORACLE_HPP_
#define VALVEPOINT_ORACLE_HPP_

// Brute-force references for tiny instances. Test-only; nothing in the
// solver depends on these.

#include <span>

#include "valvepoint/model.hpp"
#include "valvepoint/surrogate.hpp"

namespace valvepoint::oracle {

struct GridSpec {
  double step = 0.01;  // MW
};

struct OraclePoint {
  DispatchVector p;
  double value = 0.0;
};

// Exhaustive scan of the true cost over a grid on the first n - 1 units, the
// last one closing the balance. n <= 3. The result exceeds the true optimum
// by at most LipschitzConstant(problem) * (n - 1) * step.
OraclePoint BruteForceTrue(const DispatchProblem& problem, GridSpec grid = {});

// Exact minimum of the compiled surrogate by trying every combination of one
// quadratic piece per unit. At most max_combinations combinations.
OraclePoint EnumeratePieces(const DispatchProblem& problem,
                            std::span<const PiecewiseLinear> pwls,
                            long long max_combinations = 1'000'000);

}  // namespace valvepoint::oracle

#endif  // VALVEPOINT_ORACLE_HPP_
