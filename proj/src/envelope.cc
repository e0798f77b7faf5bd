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

#include "valvepoint/envelope.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace valvepoint {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Minimizer of q(x) - s x over [l, r]; ties on a flat piece go to one side.
double Support(const QuadPiece& q, double l, double r, double s,
               bool prefer_right) {
  if (q.a > 0.0) return std::clamp((s - q.b) / (2.0 * q.a), l, r);
  if (s < q.b) return l;
  if (s > q.b) return r;
  return prefer_right ? r : l;
}

double SupportValue(const QuadPiece& q, double l, double r, double s) {
  const double x = Support(q, l, r, s, false);
  return q.Value(x) - s * x;
}

// Coefficients of h(s_c + u) = P u^2 + Q u + R for one arc in a fixed regime.
struct Quadratic {
  double p = 0.0, q = 0.0, r = 0.0;
};

Quadratic SupportPolynomial(const QuadPiece& arc, double l, double r,
                            double s_probe, double s_c) {
  const double x = Support(arc, l, r, s_probe, false);
  if (arc.a > 0.0 && x > l && x < r) {
    const double shift = s_c - arc.b;
    return {-1.0 / (4.0 * arc.a), -shift / (2.0 * arc.a),
            arc.c - shift * shift / (4.0 * arc.a)};
  }
  return {0.0, -x, arc.Value(x) - s_c * x};
}

}  // namespace

Bitangent LowerBitangent(const QuadPiece& left, double left_lo, double left_hi,
                         const QuadPiece& right, double right_lo,
                         double right_hi) {
  auto phi = [&](double s) {
    return SupportValue(left, left_lo, left_hi, s) -
           SupportValue(right, right_lo, right_hi, s);
  };
  std::array<double, 4> knots = {left.Slope(left_lo), left.Slope(left_hi),
                                 right.Slope(right_lo), right.Slope(right_hi)};
  std::sort(knots.begin(), knots.end());
  std::size_t k = 0;
  while (k < knots.size() && phi(knots[k]) < 0.0) ++k;

  Bitangent out;
  if (k == 0 || k == knots.size()) {
    // Slope beyond every knot: both contacts sit at the same end of their arc.
    const bool at_right = k != 0;
    const double x1 = at_right ? left_hi : left_lo;
    const double x2 = at_right ? right_hi : right_lo;
    out.left_contact = x1;
    out.right_contact = x2;
    out.slope = x2 > x1 ? (right.Value(x2) - left.Value(x1)) / (x2 - x1)
                        : knots[at_right ? knots.size() - 1 : 0];
    if (at_right) out.slope = std::max(out.slope, knots.back());
    else out.slope = std::min(out.slope, knots.front());
    return out;
  }

  double s_lo = knots[k - 1], s_hi = knots[k];
  double s = s_hi;
  if (s_hi > s_lo && phi(s_hi) != 0.0) {
    const double s_c = 0.5 * (s_lo + s_hi);
    const Quadratic hl = SupportPolynomial(left, left_lo, left_hi, s_c, s_c);
    const Quadratic hr = SupportPolynomial(right, right_lo, right_hi, s_c, s_c);
    const double P = hl.p - hr.p, Q = hl.q - hr.q, R = hl.r - hr.r;
    const double half = 0.5 * (s_hi - s_lo);
    const double tol = 1e-12 * (1.0 + half);
    double u = std::numeric_limits<double>::quiet_NaN();
    if (std::abs(P) * half <= 1e-14 * std::abs(Q)) {
      if (Q != 0.0) u = -R / Q;
    } else {
      const double disc = std::max(0.0, Q * Q - 4.0 * P * R);
      const double root = -0.5 * (Q + std::copysign(std::sqrt(disc), Q));
      const double cand[2] = {root / P, root != 0.0 ? R / root : -Q / P};
      for (double c : cand) {
        if (c >= -half - tol && c <= half + tol && 2.0 * P * c + Q >= -tol) {
          u = c;
          break;
        }
      }
    }
    if (std::isfinite(u) && std::abs(u) <= half + tol) {
      s = std::clamp(s_c + u, s_lo, s_hi);
    } else {
      // Closed form lost to cancellation; phi is monotone so bisect.
      double a = s_lo, b = s_hi;
      for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::abs(b)); ++it) {
        const double m = 0.5 * (a + b);
        (phi(m) < 0.0 ? a : b) = m;
      }
      s = 0.5 * (a + b);
    }
  }
  out.slope = s;
  out.left_contact = Support(left, left_lo, left_hi, s, true);
  out.right_contact = Support(right, right_lo, right_hi, s, false);
  return out;
}

ConvexEnvelope ConvexEnvelopeOf(const PiecewiseQuadratic& pwq, double lo,
                                double hi) {
  ConvexEnvelope env;
  const double scale = 1.0 + std::max(std::abs(lo), std::abs(hi));
  const double tiny = 1e-12 * scale;
  if (!(hi - lo > tiny)) {
    const double mid = 0.5 * (lo + hi);
    env.fn_.pieces.push_back({lo, std::max(lo, hi), 0.0, 0.0, pwq(mid)});
    env.bridge_.push_back(false);
    return env;
  }

  struct Arc {
    QuadPiece q;
    double l, r;
  };
  std::vector<Arc> arcs;
  for (std::size_t j = pwq.PieceOf(lo); j < pwq.pieces.size(); ++j) {
    const QuadPiece& piece = pwq.pieces[j];
    const double l = std::max(lo, piece.lo);
    const double r = std::min(hi, piece.hi);
    if (r - l > tiny) arcs.push_back({piece, l, r});
    if (piece.hi >= hi) break;
  }
  if (arcs.empty()) arcs.push_back({pwq.pieces[pwq.PieceOf(lo)], lo, hi});

  struct Hull {
    std::size_t arc;
    double left_used;
    double right_used;
    double slope_in;
  };
  std::vector<Hull> hull;
  hull.push_back({0, arcs[0].l, arcs[0].r, -kInf});
  for (std::size_t n = 1; n < arcs.size(); ++n) {
    const Arc& next = arcs[n];
    Bitangent bt;
    for (;;) {
      Hull& top = hull.back();
      const Arc& arc = arcs[top.arc];
      bt = LowerBitangent(arc.q, top.left_used, arc.r, next.q, next.l, next.r);
      if (hull.size() > 1 && bt.left_contact <= top.left_used &&
          bt.slope <= top.slope_in) {
        hull.pop_back();
        continue;
      }
      top.right_used = bt.left_contact;
      break;
    }
    hull.push_back({n, bt.right_contact, next.r, bt.slope});
  }

  std::vector<QuadPiece>& out = env.fn_.pieces;
  double cursor = lo;
  auto emit = [&](double end, double a, double b, double c, bool bridge) {
    if (end - cursor <= tiny) return;
    out.push_back({cursor, end, a, b, c});
    env.bridge_.push_back(bridge);
    cursor = end;
  };
  for (std::size_t k = 0; k < hull.size(); ++k) {
    const Arc& arc = arcs[hull[k].arc];
    if (k > 0) {
      const Arc& prev = arcs[hull[k - 1].arc];
      const double x1 = hull[k - 1].right_used;
      const double x2 = hull[k].left_used;
      if (x2 - x1 > tiny) {
        const double y1 = prev.q.Value(x1);
        const double slope = (arc.q.Value(x2) - y1) / (x2 - x1);
        emit(x2, 0.0, slope, y1 - slope * x1, true);
      }
    }
    emit(hull[k].right_used, arc.q.a, arc.q.b, arc.q.c, false);
  }
  if (out.empty()) {
    const Arc& arc = arcs.front();
    out.push_back({lo, hi, arc.q.a, arc.q.b, arc.q.c});
    env.bridge_.push_back(false);
  }
  out.back().hi = hi;
  return env;
}

double ConvexEnvelope::ArgminLeft(double lambda) const {
  const auto& ps = fn_.pieces;
  auto it = std::partition_point(ps.begin(), ps.end(), [&](const QuadPiece& q) {
    return q.Slope(q.hi) < lambda;
  });
  if (it == ps.end()) return hi();
  const QuadPiece& q = *it;
  if (q.Slope(q.lo) >= lambda) return q.lo;
  if (q.a > 0.0) return std::clamp((lambda - q.b) / (2.0 * q.a), q.lo, q.hi);
  return q.hi;
}

double ConvexEnvelope::ArgminRight(double lambda) const {
  const auto& ps = fn_.pieces;
  auto it = std::partition_point(ps.begin(), ps.end(), [&](const QuadPiece& q) {
    return q.Slope(q.lo) <= lambda;
  });
  if (it == ps.begin()) return lo();
  const QuadPiece& q = *(it - 1);
  if (q.Slope(q.hi) <= lambda) return q.hi;
  if (q.a > 0.0) return std::clamp((lambda - q.b) / (2.0 * q.a), q.lo, q.hi);
  return q.lo;
}

std::pair<double, double> ConvexEnvelope::Subdifferential(double p) const {
  const auto& ps = fn_.pieces;
  if (p <= lo()) return {-kInf, ps.front().Slope(lo())};
  if (p >= hi()) return {ps.back().Slope(hi()), kInf};
  const std::size_t j = fn_.PieceOf(p);
  const double left = ps[j].Slope(p);
  if (p == ps[j].hi && j + 1 < ps.size()) return {left, ps[j + 1].Slope(p)};
  return {left, left};
}

void ConvexEnvelope::AppendSlopes(std::vector<double>& out) const {
  for (const QuadPiece& q : fn_.pieces) {
    out.push_back(q.Slope(q.lo));
    out.push_back(q.Slope(q.hi));
  }
}

}  // namespace valvepoint
