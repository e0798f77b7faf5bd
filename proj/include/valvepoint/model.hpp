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

#ifndef VALVEPOINT_MODEL_HPP_
#define VALVEPOINT_MODEL_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace valvepoint {

// Fuel-cost curve of one thermal unit with valve-point loading:
//   a p^2 + b p + c + d |sin(e (p - p_min))|,  p_min <= p <= p_max.
struct Generator {
  double a = 0.0;  // $/MW^2h
  double b = 0.0;  // $/MWh
  double c = 0.0;  // $/h
  double d = 0.0;  // $/h, valve-point amplitude
  double e = 1.0;  // rad/MW, valve-point frequency
  double p_min = 0.0;
  double p_max = 0.0;

  bool operator==(const Generator&) const = default;
};

// Power output per unit, in MW, indexed like DispatchProblem::generators.
using DispatchVector = std::vector<double>;

// Thrown for any violated precondition or malformed input. Carries the
// offending 1-based line number when it originates from dataset parsing.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, int line = 0)
      : std::runtime_error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// A lossless static dispatch instance. Construct through MakeProblem or
// LoadProblem so the invariants are checked.
struct DispatchProblem {
  std::string name;
  std::vector<Generator> generators;
  double demand = 0.0;  // MW

  std::size_t size() const { return generators.size(); }
  double TotalMin() const;
  double TotalMax() const;

  bool operator==(const DispatchProblem&) const = default;
};

// Validates generator and demand invariants; throws Error naming the unit.
void ValidateGenerator(const Generator& g, std::size_t index);
DispatchProblem MakeProblem(std::vector<Generator> generators, double demand,
                            std::string name = {});

double UnitCost(const Generator& g, double p);
// Quadratic part only (no valve-point term).
double FuelCost(const Generator& g, double p);
double TotalCost(const DispatchProblem& problem, std::span<const double> p);

struct Violation {
  std::size_t unit;  // generator index
  double amount;     // MW outside [p_min, p_max]
};

struct Feasibility {
  bool feasible = false;
  double balance_residual = 0.0;  // sum(p) - demand
  bool balance_ok = false;
  std::vector<Violation> box_violations;
};

inline constexpr double kDefaultBoxTolerance = 1e-9;
// Default balance tolerance is relative to demand.
inline double DefaultBalanceTolerance(const DispatchProblem& problem) {
  return 1e-6 * problem.demand;
}

Feasibility CheckFeasible(const DispatchProblem& problem,
                          std::span<const double> p, double tol_balance,
                          double tol_box);
Feasibility CheckFeasible(const DispatchProblem& problem,
                          std::span<const double> p);

// Common Lipschitz constant of the true and surrogate costs over the
// feasible set (l1 norm on dispatch differences).
double LipschitzConstant(const DispatchProblem& problem);

// Dataset text format:
//   # comment
//   demand <MW>
//   a b c d e p_min p_max      (one line per generator)
DispatchProblem LoadProblem(std::string_view text, std::string name = {});
DispatchProblem LoadProblemFile(const std::string& path);
std::string SerializeProblem(const DispatchProblem& problem);

}  // namespace valvepoint

#endif  // VALVEPOINT_MODEL_HPP_
