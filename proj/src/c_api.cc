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

#include "valvepoint/valvepoint.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "valvepoint/report.hpp"

struct vp_problem {
  valvepoint::DispatchProblem problem;
};

struct vp_result {
  valvepoint::DispatchProblem problem;
  valvepoint::MethodResult result;
};

namespace {

thread_local std::string g_last_error;

vp_status Fail(vp_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Maps exceptions from the core onto status codes.
template <typename F>
vp_status Guard(vp_status on_error, F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const valvepoint::Error& e) {
    return Fail(on_error, e.what());
  } catch (const std::bad_alloc&) {
    return Fail(VP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(VP_ERR_INTERNAL, e.what());
  }
}

vp_status CopyOut(const std::string& text, char* buffer, size_t capacity,
                  size_t* needed) {
  if (needed != nullptr) *needed = text.size() + 1;
  if (buffer == nullptr || capacity == 0) return VP_OK;
  const size_t n = std::min(capacity - 1, text.size());
  std::memcpy(buffer, text.data(), n);
  buffer[n] = '\0';
  if (n < text.size()) return Fail(VP_ERR_INVALID_ARGUMENT, "buffer too small");
  return VP_OK;
}

valvepoint::MethodConfig ToConfig(const vp_options& o) {
  valvepoint::MethodConfig cfg;
  switch (o.method) {
    case VP_METHOD_SIMPLE: cfg.method = valvepoint::Method::kSimple; break;
    case VP_METHOD_TANGENT: cfg.method = valvepoint::Method::kTangent; break;
    case VP_METHOD_ADAPTIVE: cfg.method = valvepoint::Method::kAdaptive; break;
    default: throw valvepoint::Error("unknown method");
  }
  cfg.tangent = {o.theta1, o.theta2};
  cfg.adaptive.epsilon = o.epsilon;
  cfg.adaptive.max_iterations = o.max_iterations;
  cfg.adaptive.merge_tol = o.merge_tol;
  cfg.adaptive.solver.gap_tol = o.gap_tol;
  cfg.adaptive.solver.node_cap = o.node_cap;
  cfg.adaptive.solver.parallel = o.parallel != 0;
  cfg.adaptive.solver.workers = o.workers;
  if (!(o.gap_tol > 0.0)) throw valvepoint::Error("gap_tol must be positive");
  if (o.node_cap < 1) throw valvepoint::Error("node_cap must be >= 1");
  return cfg;
}

}  // namespace

extern "C" {

const char* vp_last_error(void) { return g_last_error.c_str(); }

const char* vp_status_string(vp_status status) {
  switch (status) {
    case VP_OK: return "ok";
    case VP_ERR_INVALID_ARGUMENT: return "invalid argument";
    case VP_ERR_PARSE: return "parse error";
    case VP_ERR_INFEASIBLE: return "infeasible";
    case VP_ERR_IO: return "i/o error";
    case VP_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void vp_options_init(vp_options* o) {
  if (o == nullptr) return;
  const valvepoint::MethodConfig d;
  o->method = VP_METHOD_SIMPLE;
  o->theta1 = d.tangent.theta1;
  o->theta2 = d.tangent.theta2;
  o->epsilon = d.adaptive.epsilon;
  o->max_iterations = d.adaptive.max_iterations;
  o->merge_tol = d.adaptive.merge_tol;
  o->gap_tol = d.adaptive.solver.gap_tol;
  o->node_cap = d.adaptive.solver.node_cap;
  o->parallel = 0;
  o->workers = 1;
}

vp_status vp_problem_load_file(const char* path, vp_problem** out) {
  if (path == nullptr || out == nullptr) {
    return Fail(VP_ERR_INVALID_ARGUMENT, "null argument");
  }
  *out = nullptr;
  return Guard(VP_ERR_PARSE, [&] {
    std::FILE* probe = std::fopen(path, "rb");
    if (probe == nullptr) {
      return Fail(VP_ERR_IO, std::string("cannot open dataset '") + path + "'");
    }
    std::fclose(probe);
    *out = new vp_problem{valvepoint::LoadProblemFile(path)};
    return VP_OK;
  });
}

vp_status vp_problem_load_text(const char* text, const char* name,
                               vp_problem** out) {
  if (text == nullptr || out == nullptr) {
    return Fail(VP_ERR_INVALID_ARGUMENT, "null argument");
  }
  *out = nullptr;
  return Guard(VP_ERR_PARSE, [&] {
    *out = new vp_problem{valvepoint::LoadProblem(text, name ? name : "")};
    return VP_OK;
  });
}

vp_status vp_problem_create(const double* records, size_t units, double demand,
                            const char* name, vp_problem** out) {
  if ((records == nullptr && units > 0) || out == nullptr) {
    return Fail(VP_ERR_INVALID_ARGUMENT, "null argument");
  }
  *out = nullptr;
  return Guard(VP_ERR_INVALID_ARGUMENT, [&] {
    std::vector<valvepoint::Generator> gens;
    for (size_t i = 0; i < units; ++i) {
      const double* r = records + i * VP_GENERATOR_FIELDS;
      gens.push_back({r[0], r[1], r[2], r[3], r[4], r[5], r[6]});
    }
    *out = new vp_problem{
        valvepoint::MakeProblem(std::move(gens), demand, name ? name : "")};
    return VP_OK;
  });
}

void vp_problem_free(vp_problem* problem) { delete problem; }

size_t vp_problem_units(const vp_problem* p) { return p ? p->problem.size() : 0; }

double vp_problem_demand(const vp_problem* p) { return p ? p->problem.demand : 0.0; }

const char* vp_problem_name(const vp_problem* p) {
  return p ? p->problem.name.c_str() : "";
}

vp_status vp_problem_total_cost(const vp_problem* problem,
                                const double* dispatch, size_t units,
                                double* cost) {
  if (problem == nullptr || dispatch == nullptr || cost == nullptr) {
    return Fail(VP_ERR_INVALID_ARGUMENT, "null argument");
  }
  return Guard(VP_ERR_INVALID_ARGUMENT, [&] {
    *cost = valvepoint::TotalCost(problem->problem, {dispatch, units});
    return VP_OK;
  });
}

double vp_problem_lipschitz(const vp_problem* p) {
  return p ? valvepoint::LipschitzConstant(p->problem) : 0.0;
}

vp_status vp_problem_serialize(const vp_problem* problem, char* buffer,
                               size_t capacity, size_t* needed) {
  if (problem == nullptr) return Fail(VP_ERR_INVALID_ARGUMENT, "null argument");
  return Guard(VP_ERR_INTERNAL, [&] {
    return CopyOut(valvepoint::SerializeProblem(problem->problem), buffer,
                   capacity, needed);
  });
}

vp_status vp_solve(const vp_problem* problem, const vp_options* options,
                   vp_result** out) {
  if (problem == nullptr || out == nullptr) {
    return Fail(VP_ERR_INVALID_ARGUMENT, "null argument");
  }
  *out = nullptr;
  vp_options defaults;
  vp_options_init(&defaults);
  const vp_options& o = options ? *options : defaults;
  return Guard(VP_ERR_INFEASIBLE, [&]() -> vp_status {
    valvepoint::MethodConfig cfg;
    try {
      cfg = ToConfig(o);
      if (cfg.method == valvepoint::Method::kTangent) {
        valvepoint::TangentPwl(cfg.tangent);
      }
      if (cfg.method == valvepoint::Method::kAdaptive &&
          (!(cfg.adaptive.epsilon > 0.0) || cfg.adaptive.max_iterations < 1)) {
        throw valvepoint::Error("epsilon must be > 0 and max_iterations >= 1");
      }
    } catch (const valvepoint::Error& e) {
      return Fail(VP_ERR_INVALID_ARGUMENT, e.what());
    }
    auto* r = new vp_result{problem->problem, {}};
    try {
      r->result = valvepoint::SolveWith(problem->problem, cfg);
    } catch (...) {
      delete r;
      throw;
    }
    *out = r;
    return VP_OK;
  });
}

void vp_result_free(vp_result* result) { delete result; }

vp_status vp_result_dispatch(const vp_result* result, double* dispatch,
                             size_t units) {
  if (result == nullptr || dispatch == nullptr) {
    return Fail(VP_ERR_INVALID_ARGUMENT, "null argument");
  }
  const auto& p = result->result.report.p;
  if (units != p.size()) return Fail(VP_ERR_INVALID_ARGUMENT, "unit count mismatch");
  std::copy(p.begin(), p.end(), dispatch);
  return VP_OK;
}

double vp_result_total_cost(const vp_result* r) {
  return r ? r->result.report.true_cost : 0.0;
}
double vp_result_surrogate_value(const vp_result* r) {
  return r ? r->result.report.surrogate_value : 0.0;
}
double vp_result_certified_bound(const vp_result* r) {
  return r ? r->result.report.certified_bound : 0.0;
}
double vp_result_gap(const vp_result* r) {
  return r ? r->result.report.absolute_gap : 0.0;
}
int vp_result_certified(const vp_result* r) {
  return r && r->result.certified ? 1 : 0;
}
int64_t vp_result_nodes(const vp_result* r) {
  return r ? r->result.report.nodes_explored : 0;
}
size_t vp_result_iterations(const vp_result* r) {
  if (r == nullptr) return 0;
  return r->result.trace.empty() ? 1 : r->result.trace.size();
}
double vp_result_wall_time(const vp_result* r) {
  return r ? r->result.report.wall_time : 0.0;
}
double vp_result_cpu_time(const vp_result* r) {
  return r ? r->result.report.cpu_time : 0.0;
}

vp_status vp_result_format(const vp_result* result, vp_format format,
                           char* buffer, size_t capacity, size_t* needed) {
  if (result == nullptr) return Fail(VP_ERR_INVALID_ARGUMENT, "null argument");
  return Guard(VP_ERR_INTERNAL, [&] {
    std::string text;
    switch (format) {
      case VP_FORMAT_HUMAN:
        text = valvepoint::FormatHuman(result->problem, result->result);
        break;
      case VP_FORMAT_MACHINE:
      case VP_FORMAT_MACHINE_TIMED:
        text = valvepoint::FormatMachine(result->problem, result->result,
                                         format == VP_FORMAT_MACHINE_TIMED);
        break;
      case VP_FORMAT_TRACE:
        text = valvepoint::FormatTrace(result->result.trace);
        break;
      default:
        return Fail(VP_ERR_INVALID_ARGUMENT, "unknown format");
    }
    return CopyOut(text, buffer, capacity, needed);
  });
}

vp_status vp_export_lp(const vp_problem* problem, const vp_options* options,
                       const char* path) {
  if (problem == nullptr || path == nullptr) {
    return Fail(VP_ERR_INVALID_ARGUMENT, "null argument");
  }
  vp_options defaults;
  vp_options_init(&defaults);
  const vp_options& o = options ? *options : defaults;
  valvepoint::MethodConfig cfg;
  try {
    cfg = ToConfig(o);
  } catch (const valvepoint::Error& e) {
    return Fail(VP_ERR_INVALID_ARGUMENT, e.what());
  }
  return Guard(VP_ERR_IO, [&] {
    std::vector<valvepoint::PiecewiseLinear> pwls;
    try {
      pwls = valvepoint::InitialSurrogates(problem->problem, cfg);
    } catch (const valvepoint::Error& e) {
      return Fail(VP_ERR_INVALID_ARGUMENT, e.what());
    }
    valvepoint::ExportLp(problem->problem, pwls, path);
    return VP_OK;
  });
}

}  // extern "C"
