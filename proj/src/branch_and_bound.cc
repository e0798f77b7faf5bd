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
#include <chrono>
#include <cmath>
#include <ctime>
#include <future>
#include <limits>
#include <optional>
#include <queue>
#include <thread>

#include "valvepoint/solver.hpp"

namespace valvepoint {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Batch size of parallel mode. Fixed so that results do not depend on the
// number of workers.
constexpr std::size_t kParallelBatch = 32;

struct Candidate {
  DispatchVector p;
  double value = kInf;
};

struct Node {
  std::vector<double> lo, hi;
  double bound = 0.0;
  std::size_t branch_unit = 0;
  double branch_point = 0.0;
  std::uint64_t id = 0;
};

struct Evaluated {
  Node node;
  Candidate candidate;
};

struct NodeOrder {
  bool operator()(const Node& x, const Node& y) const {
    if (x.bound != y.bound) return x.bound > y.bound;
    return x.id > y.id;
  }
};

class BranchAndBound {
 public:
  BranchAndBound(const DispatchProblem& problem,
                 std::span<const PiecewiseLinear> pwls)
      : problem_(problem) {
    if (pwls.size() != problem.size()) {
      throw Error("need one surrogate per generator");
    }
    for (std::size_t i = 0; i < problem.size(); ++i) {
      compiled_.push_back(Compile(problem.generators[i], pwls[i]));
    }
  }

  double Surrogate(std::span<const double> p) const {
    double v = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) v += compiled_[i](p[i]);
    return v;
  }

  // Moves the balance residual onto the unit with the widest interval, then
  // onto the others in index order.
  void Project(DispatchVector& p, std::span<const double> lo,
               std::span<const double> hi) const {
    const auto& gens = problem_.generators;
    for (std::size_t i = 0; i < p.size(); ++i) {
      p[i] = std::clamp(p[i], gens[i].p_min, gens[i].p_max);
    }
    double residual = problem_.demand;
    for (double v : p) residual -= v;
    if (residual == 0.0) return;
    std::size_t widest = 0;
    for (std::size_t i = 1; i < p.size(); ++i) {
      if (hi[i] - lo[i] > hi[widest] - lo[widest]) widest = i;
    }
    auto absorb = [&](std::size_t i) {
      const double v = std::clamp(p[i] + residual, gens[i].p_min, gens[i].p_max);
      residual -= v - p[i];
      p[i] = v;
    };
    absorb(widest);
    for (std::size_t i = 0; i < p.size() && residual != 0.0; ++i) absorb(i);
  }

  // Best point among the relaxation solution and the convex QP over the
  // pieces it lands in.
  Candidate Improve(DispatchVector p, std::span<const double> lo,
                    std::span<const double> hi) const {
    Project(p, lo, hi);
    Candidate best{p, Surrogate(p)};
    std::vector<ConvexEnvelope> pieces;
    pieces.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      const PiecewiseQuadratic& f = compiled_[i];
      pieces.emplace_back(PiecewiseQuadratic{{f.pieces[f.PieceOf(p[i])]}});
    }
    SeparableSolution local = SolveSeparableConvex(pieces, problem_.demand);
    if (observer_) observer_(pieces, problem_.demand, local);
    if (local.feasible) {
      Project(local.p, lo, hi);
      const double v = Surrogate(local.p);
      if (v < best.value) best = {std::move(local.p), v};
    }
    return best;
  }

  std::optional<Evaluated> Evaluate(std::vector<double> lo,
                                    std::vector<double> hi,
                                    double parent_bound) const {
    const std::size_t n = lo.size();
    const double demand = problem_.demand;
    const double tol = 1e-9 * std::max(1.0, demand);
    // Bound tightening through the balance row.
    for (int pass = 0; pass < 2; ++pass) {
      double sum_lo = 0.0, sum_hi = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        sum_lo += lo[i];
        sum_hi += hi[i];
      }
      if (sum_lo > demand + tol || sum_hi < demand - tol) return std::nullopt;
      for (std::size_t i = 0; i < n; ++i) {
        const double new_lo = std::max(lo[i], demand - (sum_hi - hi[i]));
        const double new_hi = std::min(hi[i], demand - (sum_lo - lo[i]));
        lo[i] = std::min(new_lo, hi[i]);
        hi[i] = std::max(new_hi, lo[i]);
      }
    }

    std::vector<ConvexEnvelope> envs;
    envs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      envs.push_back(ConvexEnvelopeOf(compiled_[i], lo[i], hi[i]));
    }
    SeparableSolution relax = SolveSeparableConvex(envs, demand);
    if (observer_) observer_(envs, demand, relax);
    if (!relax.feasible) return std::nullopt;

    Evaluated out;
    out.node.bound = std::max(relax.value, parent_bound);
    std::size_t worst = 0;
    double worst_gap = -kInf;
    for (std::size_t i = 0; i < n; ++i) {
      const double gap = compiled_[i](relax.p[i]) - envs[i](relax.p[i]);
      if (gap > worst_gap) {
        worst_gap = gap;
        worst = i;
      }
    }
    out.node.branch_unit = worst;
    out.node.branch_point = BranchPoint(worst, envs[worst], relax.p[worst],
                                        lo[worst], hi[worst]);
    out.candidate = Improve(relax.p, lo, hi);
    out.node.lo = std::move(lo);
    out.node.hi = std::move(hi);
    return out;
  }

  SolveReport Run(const SolverConfig& cfg, const DispatchVector* warm_start);

 private:
  // Concave piece boundary nearest to p inside the envelope bridge that
  // covers p; piece boundaries make child envelopes exact in finitely many
  // splits.
  double BranchPoint(std::size_t unit, const ConvexEnvelope& env, double p,
                     double lo, double hi) const {
    const PiecewiseQuadratic& f = compiled_[unit];
    const auto& pieces = env.pieces();
    const auto& bridge = env.bridge_flags();
    std::size_t k = env.function().PieceOf(p);
    if (!bridge[k]) {
      if (k + 1 < pieces.size() && p >= pieces[k].hi && bridge[k + 1]) ++k;
      else if (k > 0 && p <= pieces[k].lo && bridge[k - 1]) --k;
    }
    const double margin = 1e-9 * (1.0 + std::abs(hi));
    auto nearest = [&](double u, double v) {
      double best = std::numeric_limits<double>::quiet_NaN();
      double best_dist = kInf;
      for (std::size_t j = 0; j + 1 < f.pieces.size(); ++j) {
        const double x = f.pieces[j].hi;
        if (x <= u || x >= v || x - lo <= margin || hi - x <= margin) continue;
        if (!f.ConcaveAfter(j)) continue;
        const double dist = std::abs(x - p);
        if (dist < best_dist) {
          best_dist = dist;
          best = x;
        }
      }
      return best;
    };
    double x = std::numeric_limits<double>::quiet_NaN();
    if (bridge[k]) x = nearest(pieces[k].lo, pieces[k].hi);
    if (std::isnan(x)) x = nearest(lo, hi);
    if (std::isnan(x)) {
      x = (p - lo > margin && hi - p > margin) ? p : 0.5 * (lo + hi);
    }
    return x;
  }

  const DispatchProblem& problem_;
  std::vector<PiecewiseQuadratic> compiled_;
  decltype(SolverConfig::relaxation_observer) observer_;
};

SolveReport BranchAndBound::Run(const SolverConfig& cfg,
                                const DispatchVector* warm_start) {
  const auto wall_start = std::chrono::steady_clock::now();
  const std::clock_t cpu_start = std::clock();
  observer_ = cfg.relaxation_observer;
  const std::size_t n = problem_.size();
  std::vector<double> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = problem_.generators[i].p_min;
    hi[i] = problem_.generators[i].p_max;
  }

  Candidate incumbent;
  auto offer = [&](Candidate&& c) {
    if (c.value < incumbent.value) incumbent = std::move(c);
  };
  if (warm_start != nullptr && warm_start->size() == n) {
    offer(Improve(*warm_start, lo, hi));
  }

  std::optional<Evaluated> root = Evaluate(lo, hi, -kInf);
  if (!root) throw Error("dispatch problem is infeasible");
  std::int64_t nodes = 1;
  offer(std::move(root->candidate));

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  std::uint64_t next_id = 0;
  double pruned_bound = kInf;
  auto admit = [&](Node&& node) {
    if (node.bound >= incumbent.value - cfg.gap_tol) {
      pruned_bound = std::min(pruned_bound, node.bound);
      return;
    }
    node.id = next_id++;
    open.push(std::move(node));
  };
  admit(std::move(root->node));

  const std::size_t batch_size = cfg.parallel ? kParallelBatch : 1;
  const int workers = cfg.parallel ? std::max(1, cfg.workers) : 1;
  bool capped = false;
  std::vector<Node> batch;
  std::vector<std::optional<Evaluated>> children;
  while (!open.empty()) {
    if (open.top().bound >= incumbent.value - cfg.gap_tol) break;
    if (nodes >= cfg.node_cap) {
      capped = true;
      break;
    }
    if (cfg.bound_trace != nullptr) cfg.bound_trace->push_back(open.top().bound);
    batch.clear();
    while (!open.empty() && batch.size() < batch_size &&
           open.top().bound < incumbent.value - cfg.gap_tol) {
      batch.push_back(open.top());
      open.pop();
    }
    children.assign(2 * batch.size(), std::nullopt);
    auto expand = [&](std::size_t b) {
      const Node& node = batch[b];
      const std::size_t u = node.branch_unit;
      std::vector<double> left_hi = node.hi, right_lo = node.lo;
      left_hi[u] = node.branch_point;
      right_lo[u] = node.branch_point;
      children[2 * b] = Evaluate(node.lo, std::move(left_hi), node.bound);
      children[2 * b + 1] = Evaluate(std::move(right_lo), node.hi, node.bound);
    };
    if (workers > 1 && batch.size() > 1) {
      std::vector<std::future<void>> jobs;
      const std::size_t stride = static_cast<std::size_t>(workers);
      for (std::size_t w = 0; w < stride && w < batch.size(); ++w) {
        jobs.push_back(std::async(std::launch::async, [&, w] {
          for (std::size_t b = w; b < batch.size(); b += stride) expand(b);
        }));
      }
      for (auto& job : jobs) job.get();
    } else {
      for (std::size_t b = 0; b < batch.size(); ++b) expand(b);
    }
    nodes += static_cast<std::int64_t>(children.size());
    for (auto& child : children) {
      if (child) offer(std::move(child->candidate));
    }
    for (auto& child : children) {
      if (child) admit(std::move(child->node));
    }
  }

  SolveReport report;
  report.p = incumbent.p;
  report.surrogate_value = incumbent.value;
  report.true_cost = TotalCost(problem_, incumbent.p);
  double bound = std::min(incumbent.value, pruned_bound);
  if (!open.empty()) bound = std::min(bound, open.top().bound);
  report.certified_bound = bound;
  report.absolute_gap = incumbent.value - bound;
  report.certified = !capped && report.absolute_gap <= cfg.gap_tol;
  report.nodes_explored = nodes;
  report.wall_time = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - wall_start)
                         .count();
  report.cpu_time =
      static_cast<double>(std::clock() - cpu_start) / CLOCKS_PER_SEC;
  return report;
}

}  // namespace

SolveReport SolveSurrogate(const DispatchProblem& problem,
                           std::span<const PiecewiseLinear> pwls,
                           const SolverConfig& cfg,
                           const DispatchVector* warm_start) {
  BranchAndBound bb(problem, pwls);
  return bb.Run(cfg, warm_start);
}

}  // namespace valvepoint
