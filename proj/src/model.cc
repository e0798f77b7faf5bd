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

#include "valvepoint/model.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <system_error>

namespace valvepoint {
namespace {

std::string UnitLabel(std::size_t index) {
  return "unit " + std::to_string(index + 1);
}

std::string FormatShortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

// Splits on ASCII whitespace only; the dataset format is locale-free.
std::vector<std::string_view> Tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r' || line[i] == '\v' ||
                               line[i] == '\f')) {
      ++i;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' &&
           line[j] != '\r' && line[j] != '\v' && line[j] != '\f') {
      ++j;
    }
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

double ParseNumber(std::string_view token, int line, std::string_view field) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw Error("line " + std::to_string(line) + ": field '" +
                    std::string(field) + "' is not a finite decimal number: '" +
                    std::string(token) + "'",
                line);
  }
  return value;
}

}  // namespace

double DispatchProblem::TotalMin() const {
  return std::accumulate(generators.begin(), generators.end(), 0.0,
                         [](double s, const Generator& g) { return s + g.p_min; });
}

double DispatchProblem::TotalMax() const {
  return std::accumulate(generators.begin(), generators.end(), 0.0,
                         [](double s, const Generator& g) { return s + g.p_max; });
}

void ValidateGenerator(const Generator& g, std::size_t index) {
  const double fields[] = {g.a, g.b, g.c, g.d, g.e, g.p_min, g.p_max};
  for (double f : fields) {
    if (!std::isfinite(f)) {
      throw Error(UnitLabel(index) + ": coefficients must be finite");
    }
  }
  if (g.a < 0.0) throw Error(UnitLabel(index) + ": a must be >= 0");
  if (g.d < 0.0) throw Error(UnitLabel(index) + ": d must be >= 0");
  if (g.e <= 0.0) throw Error(UnitLabel(index) + ": e must be > 0");
  if (g.p_min > g.p_max) {
    throw Error(UnitLabel(index) + ": p_min " + FormatShortest(g.p_min) +
                " exceeds p_max " + FormatShortest(g.p_max));
  }
}

DispatchProblem MakeProblem(std::vector<Generator> generators, double demand,
                            std::string name) {
  if (generators.empty()) throw Error("problem has no generators");
  for (std::size_t i = 0; i < generators.size(); ++i) {
    ValidateGenerator(generators[i], i);
  }
  if (!std::isfinite(demand)) throw Error("demand must be finite");
  DispatchProblem problem{std::move(name), std::move(generators), demand};
  const double lo = problem.TotalMin();
  const double hi = problem.TotalMax();
  if (demand < lo || demand > hi) {
    throw Error("demand " + FormatShortest(demand) +
                " MW outside the capacity range [" + FormatShortest(lo) + ", " +
                FormatShortest(hi) + "]");
  }
  return problem;
}

double FuelCost(const Generator& g, double p) {
  return (g.a * p + g.b) * p + g.c;
}

double UnitCost(const Generator& g, double p) {
  return FuelCost(g, p) + g.d * std::abs(std::sin(g.e * (p - g.p_min)));
}

double TotalCost(const DispatchProblem& problem, std::span<const double> p) {
  if (p.size() != problem.size()) {
    throw Error("dispatch has " + std::to_string(p.size()) +
                " entries, problem has " + std::to_string(problem.size()) +
                " generators");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    total += UnitCost(problem.generators[i], p[i]);
  }
  return total;
}

Feasibility CheckFeasible(const DispatchProblem& problem,
                          std::span<const double> p, double tol_balance,
                          double tol_box) {
  if (p.size() != problem.size()) {
    throw Error("dispatch length does not match generator count");
  }
  Feasibility out;
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Generator& g = problem.generators[i];
    sum += p[i];
    if (p[i] < g.p_min - tol_box) {
      out.box_violations.push_back({i, g.p_min - p[i]});
    } else if (p[i] > g.p_max + tol_box) {
      out.box_violations.push_back({i, p[i] - g.p_max});
    } else if (!std::isfinite(p[i])) {
      out.box_violations.push_back({i, std::numeric_limits<double>::infinity()});
    }
  }
  out.balance_residual = sum - problem.demand;
  out.balance_ok = std::abs(out.balance_residual) <= tol_balance;
  out.feasible = out.balance_ok && out.box_violations.empty();
  return out;
}

Feasibility CheckFeasible(const DispatchProblem& problem,
                          std::span<const double> p) {
  return CheckFeasible(problem, p, DefaultBalanceTolerance(problem),
                       kDefaultBoxTolerance);
}

double LipschitzConstant(const DispatchProblem& problem) {
  double k = 0.0;
  for (const Generator& g : problem.generators) {
    k += 2.0 * g.a * g.p_max + g.b + g.d * g.e;
  }
  return k;
}

DispatchProblem LoadProblem(std::string_view text, std::string name) {
  static constexpr std::string_view kFields[] = {"a", "b",     "c",    "d",
                                                 "e", "p_min", "p_max"};
  std::optional<double> demand;
  std::vector<Generator> generators;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    auto tokens = Tokenize(line);
    if (tokens.empty()) continue;
    if (!demand) {
      if (tokens[0] != "demand") {
        throw Error("line " + std::to_string(line_no) +
                        ": expected 'demand <MW>' before generator records",
                    line_no);
      }
      if (tokens.size() != 2) {
        throw Error("line " + std::to_string(line_no) +
                        ": 'demand' takes exactly one value",
                    line_no);
      }
      demand = ParseNumber(tokens[1], line_no, "demand");
      continue;
    }
    if (tokens[0] == "demand") {
      throw Error("line " + std::to_string(line_no) + ": duplicate demand record",
                  line_no);
    }
    if (tokens.size() < 7) {
      throw Error("line " + std::to_string(line_no) + ": missing field '" +
                      std::string(kFields[tokens.size()]) +
                      "' (expected 7 values: a b c d e p_min p_max)",
                  line_no);
    }
    if (tokens.size() > 7) {
      throw Error("line " + std::to_string(line_no) +
                      ": too many fields (expected 7 values: a b c d e p_min p_max)",
                  line_no);
    }
    double v[7];
    for (int k = 0; k < 7; ++k) v[k] = ParseNumber(tokens[k], line_no, kFields[k]);
    Generator g{v[0], v[1], v[2], v[3], v[4], v[5], v[6]};
    try {
      ValidateGenerator(g, generators.size());
    } catch (const Error& err) {
      throw Error("line " + std::to_string(line_no) + ": " + err.what(), line_no);
    }
    generators.push_back(g);
  }
  if (!demand) throw Error("missing 'demand' record");
  return MakeProblem(std::move(generators), *demand, std::move(name));
}

DispatchProblem LoadProblemFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open dataset '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string name = path;
  if (auto slash = name.find_last_of('/'); slash != std::string::npos) {
    name = name.substr(slash + 1);
  }
  if (auto dot = name.find_last_of('.'); dot != std::string::npos && dot > 0) {
    name = name.substr(0, dot);
  }
  return LoadProblem(buf.str(), std::move(name));
}

std::string SerializeProblem(const DispatchProblem& problem) {
  std::string out;
  if (!problem.name.empty()) out += "# " + problem.name + "\n";
  out += "# a b c d e p_min p_max\n";
  out += "demand " + FormatShortest(problem.demand) + "\n";
  for (const Generator& g : problem.generators) {
    out += FormatShortest(g.a) + ' ' + FormatShortest(g.b) + ' ' +
           FormatShortest(g.c) + ' ' + FormatShortest(g.d) + ' ' +
           FormatShortest(g.e) + ' ' + FormatShortest(g.p_min) + ' ' +
           FormatShortest(g.p_max) + '\n';
  }
  return out;
}

}  // namespace valvepoint
