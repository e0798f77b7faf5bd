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

#include "valvepoint/report.hpp"

#include <cstdio>

namespace valvepoint {
namespace {

void Appendf(std::string& out, const char* fmt, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  out += buf;
}

}  // namespace

const char* MethodName(Method m) {
  switch (m) {
    case Method::kSimple: return "simple";
    case Method::kTangent: return "tangent";
    case Method::kAdaptive: return "adaptive";
  }
  return "unknown";
}

Method ParseMethod(const std::string& name) {
  if (name == "simple") return Method::kSimple;
  if (name == "tangent") return Method::kTangent;
  if (name == "adaptive") return Method::kAdaptive;
  throw Error("unknown method '" + name + "' (simple, tangent, adaptive)");
}

std::vector<PiecewiseLinear> InitialSurrogates(const DispatchProblem& problem,
                                               const MethodConfig& cfg) {
  switch (cfg.method) {
    case Method::kSimple:
      return std::vector<PiecewiseLinear>(problem.size(), IdentityPwl());
    case Method::kTangent:
      return std::vector<PiecewiseLinear>(problem.size(), TangentPwl(cfg.tangent));
    case Method::kAdaptive:
      return std::vector<PiecewiseLinear>(problem.size(),
                                          ChordPwl({0.0, kHalfPi}));
  }
  throw Error("unknown method");
}

MethodResult SolveWith(const DispatchProblem& problem, const MethodConfig& cfg) {
  MethodResult out;
  out.method = cfg.method;
  if (cfg.method == Method::kAdaptive) {
    AdaptiveResult r = AdaptiveSolve(problem, cfg.adaptive);
    out.report = std::move(r.report);
    out.trace = std::move(r.trace);
    out.certified = r.converged;
    return out;
  }
  const auto pwls = InitialSurrogates(problem, cfg);
  out.report = SolveSurrogate(problem, pwls, cfg.adaptive.solver);
  out.certified = out.report.certified;
  return out;
}

std::string FormatHuman(const DispatchProblem& problem,
                        const MethodResult& result) {
  const SolveReport& r = result.report;
  std::string out;
  Appendf(out, "Dataset  %s (%zu units, demand %.3f MW)\n",
          problem.name.empty() ? "-" : problem.name.c_str(), problem.size(),
          problem.demand);
  Appendf(out, "Method   %s\n\n", MethodName(result.method));
  out += "Unit      Power (MW)\n";
  for (std::size_t i = 0; i < r.p.size(); ++i) {
    Appendf(out, "p%-7zu %11.3f\n", i + 1, r.p[i]);
  }
  out += "\n";
  Appendf(out, "Total cost ($/h)        %.2f\n", r.true_cost);
  Appendf(out, "Surrogate optimum       %.2f\n", r.surrogate_value);
  Appendf(out, "Certified bound         %.6f\n", r.certified_bound);
  Appendf(out, "Certified gap ($/h)     %.3e%s\n", r.absolute_gap,
          result.certified ? "" : "  (NOT certified)");
  if (result.method == Method::kAdaptive) {
    Appendf(out, "Iterations              %zu\n", result.trace.size());
  }
  Appendf(out, "Nodes                   %lld\n",
          static_cast<long long>(r.nodes_explored));
  Appendf(out, "Real time (s)           %.3f\n", r.wall_time);
  Appendf(out, "CPU time (s)            %.3f\n", r.cpu_time);
  return out;
}

std::string FormatMachine(const DispatchProblem& problem,
                          const MethodResult& result, bool with_timing) {
  const SolveReport& r = result.report;
  std::string out;
  Appendf(out, "dataset=%s\n", problem.name.c_str());
  Appendf(out, "method=%s\n", MethodName(result.method));
  Appendf(out, "units=%zu\n", problem.size());
  Appendf(out, "demand=%.9f\n", problem.demand);
  for (std::size_t i = 0; i < r.p.size(); ++i) {
    Appendf(out, "p%zu=%.9f\n", i + 1, r.p[i]);
  }
  Appendf(out, "total_cost=%.6f\n", r.true_cost);
  Appendf(out, "surrogate_value=%.6f\n", r.surrogate_value);
  Appendf(out, "certified_bound=%.6f\n", r.certified_bound);
  Appendf(out, "gap=%.6e\n", r.absolute_gap);
  Appendf(out, "certified=%d\n", result.certified ? 1 : 0);
  Appendf(out, "nodes=%lld\n", static_cast<long long>(r.nodes_explored));
  if (result.method == Method::kAdaptive) {
    Appendf(out, "iterations=%zu\n", result.trace.size());
  }
  if (with_timing) {
    Appendf(out, "wall_time=%.6f\n", r.wall_time);
    Appendf(out, "cpu_time=%.6f\n", r.cpu_time);
  }
  return out;
}

}  // namespace valvepoint
