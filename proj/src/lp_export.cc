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

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "valvepoint/solver.hpp"

namespace valvepoint {
namespace {

// Shortest text that reads back to the same double.
std::string Num(double v) {
  char buf[40];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

// Appends "+ coef name" / "- |coef| name", wrapping long lines.
class Expr {
 public:
  explicit Expr(std::ostream& out) : out_(out) {}
  void Term(double coef, const std::string& name) {
    if (coef == 0.0) return;
    Sep();
    out_ << (coef < 0.0 ? "- " : first_ ? "" : "+ ") << Num(std::abs(coef))
         << ' ' << name;
    first_ = false;
  }
  void Raw(const std::string& text) {
    Sep();
    out_ << text;
    first_ = false;
  }
  bool empty() const { return first_; }

 private:
  void Sep() {
    if (!first_) out_ << ' ';
    if (++count_ % 6 == 0) out_ << "\n   ";
  }
  std::ostream& out_;
  bool first_ = true;
  int count_ = 0;
};

std::string Var(const char* stem, std::size_t i) {
  return std::string(stem) + std::to_string(i + 1);
}

std::string Var(const char* stem, std::size_t i, std::size_t j) {
  return std::string(stem) + std::to_string(i + 1) + '_' + std::to_string(j + 1);
}

}  // namespace

void WriteLp(const DispatchProblem& problem,
             std::span<const PiecewiseLinear> pwls, std::ostream& out) {
  const std::size_t n = problem.size();
  if (pwls.size() != n) throw Error("need one surrogate per generator");
  const auto& gens = problem.generators;
  auto segmented = [&](std::size_t i) {
    return pwls[i].kind != SurrogateKind::kIdentity;
  };

  out << "\\ Valve-point economic dispatch surrogate";
  if (!problem.name.empty()) out << ": " << problem.name;
  out << "\n\\ p: unit output, t: distance of e (p - p_min) to k pi\n";
  out << "Minimize\n obj: ";
  Expr obj(out);
  double constant = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Generator& g = gens[i];
    obj.Term(g.b, Var("p", i));
    constant += g.c;
    if (!segmented(i)) {
      obj.Term(g.d, Var("t", i));
      continue;
    }
    for (std::size_t j = 0; j < pwls[i].segments(); ++j) {
      obj.Term(g.d * pwls[i].slopes[j], Var("chi", i, j));
      obj.Term(g.d * pwls[i].intercepts[j], Var("eta", i, j));
    }
  }
  bool any_quad = false;
  for (const Generator& g : gens) any_quad = any_quad || g.a != 0.0;
  if (any_quad) {
    obj.Raw("+ [");
    bool first = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (gens[i].a == 0.0) continue;
      out << (first ? " " : " + ") << Num(2.0 * gens[i].a) << ' ' << Var("p", i)
          << " ^ 2";
      if (i % 6 == 5) out << "\n   ";
      first = false;
    }
    out << " ] / 2";
  }
  if (constant != 0.0) obj.Raw((constant < 0.0 ? "- " : "+ ") + Num(std::abs(constant)));
  if (obj.empty()) out << "0 p1";
  out << "\n";

  out << "Subject To\n balance:";
  for (std::size_t i = 0; i < n; ++i) out << (i ? " + " : " ") << Var("p", i);
  out << " = " << Num(problem.demand) << "\n";
  for (std::size_t i = 0; i < n; ++i) {
    const Generator& g = gens[i];
    const std::string p = Var("p", i), t = Var("t", i), k = Var("k", i);
    const double offset = g.e * g.p_min;
    // -t <= e (p - p_min) - pi k <= t
    out << ' ' << Var("saw_lo", i) << ": " << Num(g.e) << ' ' << p << " - "
        << Num(kPi) << ' ' << k << " + " << t << " >= " << Num(offset) << "\n";
    out << ' ' << Var("saw_hi", i) << ": " << Num(g.e) << ' ' << p << " - "
        << Num(kPi) << ' ' << k << " - " << t << " <= " << Num(offset) << "\n";
    if (!segmented(i)) continue;
    const PiecewiseLinear& pwl = pwls[i];
    const std::size_t m = pwl.segments();
    out << ' ' << Var("tsum", i) << ": " << t;
    for (std::size_t j = 0; j < m; ++j) out << " - " << Var("chi", i, j);
    out << " = 0\n";
    out << ' ' << Var("onehot", i) << ':';
    for (std::size_t j = 0; j < m; ++j) out << (j ? " + " : " ") << Var("eta", i, j);
    out << " = 1\n";
    for (std::size_t j = 0; j < m; ++j) {
      const std::string chi = Var("chi", i, j), eta = Var("eta", i, j);
      out << ' ' << Var("seg_lo", i, j) << ": " << chi << " - "
          << Num(pwl.breakpoints[j]) << ' ' << eta << " >= 0\n";
      out << ' ' << Var("seg_hi", i, j) << ": " << chi << " - "
          << Num(pwl.breakpoints[j + 1]) << ' ' << eta << " <= 0\n";
    }
  }

  out << "Bounds\n";
  for (std::size_t i = 0; i < n; ++i) {
    const Generator& g = gens[i];
    const long long periods =
        static_cast<long long>(std::ceil(g.e * (g.p_max - g.p_min) / kPi));
    out << ' ' << Num(g.p_min) << " <= " << Var("p", i) << " <= " << Num(g.p_max)
        << "\n";
    out << " 0 <= " << Var("t", i) << "\n";
    out << " 0 <= " << Var("k", i) << " <= " << periods << "\n";
  }
  out << "General\n";
  for (std::size_t i = 0; i < n; ++i) out << ' ' << Var("k", i) << "\n";
  bool any_binary = false;
  for (std::size_t i = 0; i < n; ++i) any_binary = any_binary || segmented(i);
  if (any_binary) {
    out << "Binary\n";
    for (std::size_t i = 0; i < n; ++i) {
      if (!segmented(i)) continue;
      for (std::size_t j = 0; j < pwls[i].segments(); ++j) {
        out << ' ' << Var("eta", i, j) << "\n";
      }
    }
  }
  out << "End\n";
}

void ExportLp(const DispatchProblem& problem,
              std::span<const PiecewiseLinear> pwls, const std::string& path) {
  std::ostringstream text;
  WriteLp(problem, pwls, text);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot write '" + path + "'");
  file << text.str();
  if (!file.flush()) throw Error("failed writing '" + path + "'");
}

}  // namespace valvepoint
