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

// Command-line front end. Links only the C interface of libvalvepoint.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "valvepoint/valvepoint.h"

#ifndef VALVEPOINT_DATA_DIR
#define VALVEPOINT_DATA_DIR "data"
#endif

namespace {

constexpr double kPi = 3.14159265358979323846;

// Exit codes: 0 certified, 1 bad input, 2 solve failed or not certified.
constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitSolve = 2;

struct Handle {
  vp_problem* problem = nullptr;
  vp_result* result = nullptr;
  ~Handle() {
    vp_result_free(result);
    vp_problem_free(problem);
  }
};

double ParseAngle(const std::string& text) {
  std::string s = text;
  double divisor = 1.0;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    divisor = std::stod(s.substr(slash + 1));
    s.resize(slash);
  }
  double factor = 1.0;
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
    factor = kPi;
    s.resize(s.size() - 2);
    if (!s.empty() && s.back() == '*') s.pop_back();
    if (s.empty()) s = "1";
  }
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size() || divisor == 0.0) throw std::invalid_argument(text);
  return v * factor / divisor;
}

std::string DataDir() {
  if (const char* env = std::getenv("VALVEPOINT_DATA_DIR")) return env;
  return VALVEPOINT_DATA_DIR;
}

// A dataset argument is a path, or the name of a bundled case.
std::string ResolveDataset(const std::string& arg) {
  namespace fs = std::filesystem;
  if (fs::exists(arg)) return arg;
  const fs::path bundled = fs::path(DataDir()) / (arg + ".txt");
  if (fs::exists(bundled)) return bundled.string();
  return arg;
}

int WorkerCap() {
  if (const char* env = std::getenv("VALVEPOINT_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 0;
}

std::string Format(const vp_result* result, vp_format format) {
  size_t needed = 0;
  vp_result_format(result, format, nullptr, 0, &needed);
  std::string text(needed, '\0');
  vp_result_format(result, format, text.data(), text.size(), &needed);
  text.resize(needed > 0 ? needed - 1 : 0);
  return text;
}

struct SolveArgs {
  std::string dataset;
  std::string method = "simple";
  std::string theta1 = "0.35pi";
  std::string theta2 = "0.47pi";
  double epsilon = 1e-3;
  int max_iterations = 100;
  double gap_tol = 1e-6;
  long long node_cap = 1'000'000;
  bool parallel = false;
  int workers = 0;
  std::string format = "human";
  bool timing = false;
  std::string trace_path;
  std::string output;
};

int BuildOptions(const SolveArgs& a, CLI::App& cmd, vp_options& o) {
  vp_options_init(&o);
  if (a.method == "simple") o.method = VP_METHOD_SIMPLE;
  else if (a.method == "tangent") o.method = VP_METHOD_TANGENT;
  else if (a.method == "adaptive") o.method = VP_METHOD_ADAPTIVE;
  else {
    std::cerr << "error: unknown method '" << a.method << "'\n";
    return kExitInput;
  }
  const bool theta_given = cmd.count("--theta1") + cmd.count("--theta2") > 0;
  if (theta_given && o.method != VP_METHOD_TANGENT) {
    std::cerr << "error: --theta1/--theta2 apply to --method tangent only\n";
    return kExitInput;
  }
  const bool adaptive_given =
      cmd.count("--epsilon") + cmd.count("--max-iterations") > 0;
  if (adaptive_given && o.method != VP_METHOD_ADAPTIVE) {
    std::cerr << "error: --epsilon/--max-iterations apply to --method adaptive only\n";
    return kExitInput;
  }
  try {
    o.theta1 = ParseAngle(a.theta1);
    o.theta2 = ParseAngle(a.theta2);
  } catch (const std::exception&) {
    std::cerr << "error: bad angle (use e.g. 1.1, 0.35pi or pi/4)\n";
    return kExitInput;
  }
  o.epsilon = a.epsilon;
  o.max_iterations = a.max_iterations;
  o.gap_tol = a.gap_tol;
  o.node_cap = a.node_cap;
  o.parallel = a.parallel ? 1 : 0;
  int workers = a.workers > 0 ? a.workers
                              : static_cast<int>(std::thread::hardware_concurrency());
  if (const int cap = WorkerCap(); cap > 0) workers = std::min(workers, cap);
  o.workers = std::max(1, workers);
  return kExitOk;
}

int LoadDataset(const std::string& arg, Handle& h) {
  const std::string path = ResolveDataset(arg);
  if (vp_problem_load_file(path.c_str(), &h.problem) != VP_OK) {
    std::cerr << "error: " << vp_last_error() << "\n";
    return kExitInput;
  }
  return kExitOk;
}

int RunSolve(const SolveArgs& a, CLI::App& cmd) {
  vp_options o;
  if (int rc = BuildOptions(a, cmd, o); rc != kExitOk) return rc;
  Handle h;
  if (int rc = LoadDataset(a.dataset, h); rc != kExitOk) return rc;
  if (vp_status s = vp_solve(h.problem, &o, &h.result); s != VP_OK) {
    std::cerr << "error: " << vp_status_string(s) << ": " << vp_last_error() << "\n";
    return s == VP_ERR_INVALID_ARGUMENT ? kExitInput : kExitSolve;
  }
  const vp_format fmt = a.format == "machine"
                            ? (a.timing ? VP_FORMAT_MACHINE_TIMED : VP_FORMAT_MACHINE)
                            : VP_FORMAT_HUMAN;
  std::cout << Format(h.result, fmt);
  if (!a.trace_path.empty()) {
    std::ofstream trace(a.trace_path, std::ios::binary | std::ios::trunc);
    if (!trace) {
      std::cerr << "error: cannot write '" << a.trace_path << "'\n";
      return kExitInput;
    }
    trace << Format(h.result, VP_FORMAT_TRACE);
  }
  if (!vp_result_certified(h.result)) {
    std::cerr << "warning: result is not certified (gap "
              << vp_result_gap(h.result) << ")\n";
    return kExitSolve;
  }
  return kExitOk;
}

int RunExport(const SolveArgs& a, CLI::App& cmd) {
  vp_options o;
  if (int rc = BuildOptions(a, cmd, o); rc != kExitOk) return rc;
  Handle h;
  if (int rc = LoadDataset(a.dataset, h); rc != kExitOk) return rc;
  if (vp_status s = vp_export_lp(h.problem, &o, a.output.c_str()); s != VP_OK) {
    std::cerr << "error: " << vp_last_error() << "\n";
    return kExitInput;
  }
  return kExitOk;
}

struct BenchRow {
  const char* dataset;
  const char* method;
  double expected;      // reference value for this method
  double best_known;
  double tolerance;
};

// Reference totals for the bundled cases, with the best known values for
// comparison.
constexpr BenchRow kBenchRows[] = {
    {"case1", "simple", 8234.07, 8234.07, 0.01},
    {"case2a", "simple", 17963.83, 17963.83, 0.01},
    {"case2b", "simple", 24170.66, 24169.92, 0.01},
    {"case3", "simple", 121415.31, 121412.54, 0.02},
    {"case3", "tangent", 121412.54, 121412.54, 0.02},
    {"case1", "adaptive", 8234.07, 8234.07, 0.01},
    {"case2a", "adaptive", 17963.83, 17963.83, 0.01},
    {"case2b", "adaptive", 24169.92, 24169.92, 0.01},
    {"case3", "adaptive", 121412.54, 121412.54, 0.02},
};

int RunBench(bool parallel, int workers) {
  std::printf("%-8s %-9s %12s %12s %10s %9s  %s\n", "case", "method", "cost",
              "best-known", "deviation", "time(s)", "status");
  bool all_ok = true;
  for (const BenchRow& row : kBenchRows) {
    Handle h;
    if (LoadDataset(row.dataset, h) != kExitOk) return kExitInput;
    vp_options o;
    vp_options_init(&o);
    const std::string m = row.method;
    o.method = m == "simple"    ? VP_METHOD_SIMPLE
               : m == "tangent" ? VP_METHOD_TANGENT
                                : VP_METHOD_ADAPTIVE;
    o.parallel = parallel ? 1 : 0;
    o.workers = std::max(1, workers);
    if (vp_solve(h.problem, &o, &h.result) != VP_OK) {
      std::printf("%-8s %-9s %s\n", row.dataset, row.method, vp_last_error());
      all_ok = false;
      continue;
    }
    const double cost = vp_result_total_cost(h.result);
    const bool ok = std::abs(cost - row.expected) <= row.tolerance &&
                    vp_result_certified(h.result);
    all_ok = all_ok && ok;
    std::printf("%-8s %-9s %12.2f %12.2f %+10.2f %9.3f  %s\n", row.dataset,
                row.method, cost, row.best_known, cost - row.best_known,
                vp_result_wall_time(h.result), ok ? "ok" : "FAIL");
  }
  return all_ok ? kExitOk : kExitSolve;
}

void AddSolveOptions(CLI::App* cmd, SolveArgs& a) {
  cmd->add_option("dataset", a.dataset, "Dataset file or bundled case name")
      ->required();
  cmd->add_option("-m,--method", a.method, "simple | tangent | adaptive")
      ->capture_default_str();
  cmd->add_option("--theta1", a.theta1, "First tangent point (e.g. 0.35pi)")
      ->capture_default_str();
  cmd->add_option("--theta2", a.theta2, "Second tangent point (e.g. 0.47pi)")
      ->capture_default_str();
  cmd->add_option("--epsilon", a.epsilon, "Adaptive stopping gap ($/h)")
      ->capture_default_str();
  cmd->add_option("--max-iterations", a.max_iterations, "Adaptive iteration cap")
      ->capture_default_str();
  cmd->add_option("--gap-tol", a.gap_tol, "Branch-and-bound gap ($/h)")
      ->capture_default_str();
  cmd->add_option("--node-cap", a.node_cap, "Branch-and-bound node limit")
      ->capture_default_str();
  cmd->add_flag("--parallel", a.parallel, "Evaluate nodes in parallel batches");
  cmd->add_option("--workers", a.workers,
                  "Worker threads (default: hardware; capped by VALVEPOINT_WORKERS)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Global economic load dispatch with valve-point effects"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "Solve one dataset");
  AddSolveOptions(solve, solve_args);
  solve->add_option("-f,--format", solve_args.format, "human | machine")
      ->check(CLI::IsMember({"human", "machine"}))
      ->capture_default_str();
  solve->add_flag("--timing", solve_args.timing,
                  "Include timing records in machine output");
  solve->add_option("--trace", solve_args.trace_path,
                    "Write the adaptive iteration trace to a file");

  SolveArgs export_args;
  CLI::App* exp = app.add_subcommand("export", "Write the surrogate model in LP format");
  AddSolveOptions(exp, export_args);
  exp->add_option("-o,--output", export_args.output, "Destination .lp file")
      ->required();

  bool bench_parallel = false;
  int bench_workers = 1;
  CLI::App* bench = app.add_subcommand("bench", "Run every bundled benchmark");
  bench->add_flag("--parallel", bench_parallel, "Evaluate nodes in parallel batches");
  bench->add_option("--workers", bench_workers, "Worker threads");

  CLI11_PARSE(app, argc, argv);

  if (const int cap = WorkerCap(); cap > 0) bench_workers = std::min(bench_workers, cap);
  if (*solve) return RunSolve(solve_args, *solve);
  if (*exp) return RunExport(export_args, *exp);
  if (*bench) return RunBench(bench_parallel, bench_workers);
  return kExitInput;
}
