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

#include "valvepoint/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace valvepoint {

SawtoothPoint Sawtooth(double x) {
  const double k = std::ceil(x / kPi - 0.5);
  return {std::abs(x - k * kPi), static_cast<long long>(k)};
}

std::size_t PiecewiseLinear::SegmentOf(double t) const {
  // First interior breakpoint >= t closes the segment containing t.
  auto it = std::lower_bound(breakpoints.begin() + 1, breakpoints.end() - 1, t);
  return static_cast<std::size_t>(it - breakpoints.begin()) - 1;
}

double PiecewiseLinear::operator()(double t) const {
  const std::size_t j = SegmentOf(t);
  return slopes[j] * t + intercepts[j];
}

PiecewiseLinear IdentityPwl() {
  return {{0.0, kHalfPi}, {1.0}, {0.0}, SurrogateKind::kIdentity};
}

PiecewiseLinear TangentPwl(const TangentConfig& cfg) {
  const double t1 = cfg.theta1;
  const double t2 = cfg.theta2;
  if (!(0.0 < t1 && t1 < t2 && t2 < kHalfPi)) {
    throw Error("tangent points must satisfy 0 < theta1 < theta2 < pi/2");
  }
  const double c1 = std::cos(t1), s1 = std::sin(t1);
  const double c2 = std::cos(t2), s2 = std::sin(t2);
  const double beta1 = s1 - t1 * c1;
  const double beta2 = s2 - t2 * c2;
  // Where t meets T1, and where T1 meets T2.
  const double x1 = beta1 / (1.0 - c1);
  const double x2 = (t2 * c2 - t1 * c1 - s2 + s1) / (c2 - c1);
  if (!(0.0 < x1 && x1 < x2 && x2 < kHalfPi)) {
    throw Error("tangent breakpoints out of order for theta1=" +
                std::to_string(t1) + ", theta2=" + std::to_string(t2));
  }
  return {{0.0, x1, x2, kHalfPi},
          {1.0, c1, c2},
          {0.0, beta1, beta2},
          SurrogateKind::kOver};
}

PiecewiseLinear ChordPwl(const std::vector<double>& breakpoints) {
  if (breakpoints.size() < 2) {
    throw Error("chord surrogate needs at least two breakpoints");
  }
  if (breakpoints.front() != 0.0 || breakpoints.back() != kHalfPi) {
    throw Error("chord breakpoints must start at 0 and end at pi/2");
  }
  PiecewiseLinear pwl;
  pwl.kind = SurrogateKind::kUnder;
  pwl.breakpoints = breakpoints;
  for (std::size_t j = 0; j + 1 < breakpoints.size(); ++j) {
    const double x0 = breakpoints[j], x1 = breakpoints[j + 1];
    if (!(x1 > x0)) throw Error("chord breakpoints must be strictly increasing");
    const double slope = (std::sin(x1) - std::sin(x0)) / (x1 - x0);
    pwl.slopes.push_back(slope);
    pwl.intercepts.push_back(std::sin(x0) - slope * x0);
  }
  return pwl;
}

std::vector<double> Refine(std::vector<double> breakpoints, double t,
                           double merge_tol) {
  auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), t);
  if (it != breakpoints.end() && *it - t <= merge_tol) return breakpoints;
  if (it != breakpoints.begin() && t - *(it - 1) <= merge_tol) return breakpoints;
  breakpoints.insert(it, t);
  return breakpoints;
}

std::size_t PiecewiseQuadratic::PieceOf(double p) const {
  auto it = std::lower_bound(
      pieces.begin(), pieces.end() - 1, p,
      [](const QuadPiece& piece, double v) { return piece.hi < v; });
  return static_cast<std::size_t>(it - pieces.begin());
}

double PiecewiseQuadratic::operator()(double p) const {
  return pieces[PieceOf(p)].Value(p);
}

bool PiecewiseQuadratic::ConcaveAfter(std::size_t j) const {
  const double x = pieces[j].hi;
  return pieces[j].Slope(x) > pieces[j + 1].Slope(x);
}

PiecewiseQuadratic Compile(const Generator& g, const PiecewiseLinear& pwl) {
  PiecewiseQuadratic out;
  const double span = g.e * (g.p_max - g.p_min);
  if (g.d == 0.0 || span <= 0.0) {
    // Valve-point term vanishes on a point domain as well (sawtooth is 0).
    const double slope0 = g.d * g.e * pwl.slopes.front();
    const double offset0 = g.d * pwl.intercepts.front();
    out.pieces.push_back({g.p_min, g.p_max, g.a, g.b + slope0,
                          g.c + offset0 - slope0 * g.p_min});
    return out;
  }
  const double de = g.d * g.e;
  const std::size_t m = pwl.segments();
  const long long periods = static_cast<long long>(std::ceil(span / kPi));
  double x_lo = 0.0;
  auto emit = [&](double x_hi, double b, double c) {
    // Returns false once the domain end is reached.
    const bool last = x_hi >= span;
    const double p_lo = out.pieces.empty() ? g.p_min : out.pieces.back().hi;
    const double p_hi = last ? g.p_max : g.p_min + x_hi / g.e;
    if (x_hi > x_lo) out.pieces.push_back({p_lo, p_hi, g.a, b, c});
    x_lo = x_hi;
    return !last;
  };
  const double base = g.e * g.p_min;
  for (long long k = 0; k < periods; ++k) {
    const double kpi = static_cast<double>(k) * kPi;
    // Rising flank: t = e (p - p_min) - k pi.
    for (std::size_t j = 0; j < m; ++j) {
      const double alpha = pwl.slopes[j], beta = pwl.intercepts[j];
      if (!emit(kpi + pwl.breakpoints[j + 1], g.b + de * alpha,
                g.c + g.d * (beta - alpha * (base + kpi)))) {
        return out;
      }
    }
    // Falling flank: t = (k + 1) pi - e (p - p_min).
    const double next = kpi + kPi;
    for (std::size_t j = m; j-- > 0;) {
      const double alpha = pwl.slopes[j], beta = pwl.intercepts[j];
      const double x_hi = j == 0 ? next : next - pwl.breakpoints[j];
      if (!emit(x_hi, g.b - de * alpha,
                g.c + g.d * (beta + alpha * (next + base)))) {
        return out;
      }
    }
  }
  // Rounding in the period count can stop one flank short of span.
  out.pieces.back().hi = g.p_max;
  return out;
}

}  // namespace valvepoint
