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

#ifndef VALVEPOINT_REPORT_HPP_
#define VALVEPOINT_REPORT_HPP_

#include <string>
#include <vector>

#include "valvepoint/adaptive.hpp"

namespace valvepoint {

enum class Method { kSimple, kTangent, kAdaptive };

const char* MethodName(Method m);
Method ParseMethod(const std::string& name);

struct MethodConfig {
  Method method = Method::kSimple;
  TangentConfig tangent;
  AdaptiveConfig adaptive;  // its solver field applies to every method
};

struct MethodResult {
  Method method = Method::kSimple;
  SolveReport report;
  std::vector<IterationRecord> trace;  // adaptive only
  // Solver certified its optimum (adaptive: and converged below epsilon).
  bool certified = false;
};

// Surrogates the method starts from: identity, tangent, or the initial chord.
std::vector<PiecewiseLinear> InitialSurrogates(const DispatchProblem& problem,
                                               const MethodConfig& cfg);
MethodResult SolveWith(const DispatchProblem& problem, const MethodConfig& cfg);

// Dispatch in MW to 3 decimals and costs to 2, as a readable table.
std::string FormatHuman(const DispatchProblem& problem,
                        const MethodResult& result);
// One key=value record per line. Timing lines only when requested so that
// repeated runs produce identical bytes.
std::string FormatMachine(const DispatchProblem& problem,
                          const MethodResult& result, bool with_timing);

}  // namespace valvepoint

#endif  // VALVEPOINT_REPORT_HPP_
