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

#ifndef VALVEPOINT_SURROGATE_HPP_
#define VALVEPOINT_SURROGATE_HPP_

#include <cstddef>
#include <numbers>
#include <vector>

#include "valvepoint/model.hpp"

namespace valvepoint {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;
inline constexpr double kDefaultMergeTolerance = 1e-9;

// Distance from x to the nearest multiple of pi, with the multiple that
// attains it. Ties (x an odd multiple of pi/2) go to the smaller multiple.
struct SawtoothPoint {
  double t = 0.0;  // in [0, pi/2]
  long long k = 0;
};
SawtoothPoint Sawtooth(double x);

enum class SurrogateKind { kIdentity, kOver, kUnder };

// Piecewise-linear stand-in for sin(t) on [0, pi/2]. Segment j spans
// [breakpoints[j], breakpoints[j+1]] with value slopes[j] * t + intercepts[j].
struct PiecewiseLinear {
  std::vector<double> breakpoints;
  std::vector<double> slopes;
  std::vector<double> intercepts;
  SurrogateKind kind = SurrogateKind::kIdentity;

  std::size_t segments() const { return slopes.size(); }
  // Index of the segment containing t; boundary points belong to the left
  // segment.
  std::size_t SegmentOf(double t) const;
  double operator()(double t) const;
};

struct TangentConfig {
  double theta1 = 0.35 * kPi;
  double theta2 = 0.47 * kPi;
};

// Single segment t -> t (the plain sawtooth model).
PiecewiseLinear IdentityPwl();
// min(t, T1(t), T2(t)) where Tj is the tangent to sin at theta_j.
PiecewiseLinear TangentPwl(const TangentConfig& cfg);
// Chords of sin between consecutive breakpoints; breakpoints must be strictly
// increasing, start at 0 and end at pi/2.
PiecewiseLinear ChordPwl(const std::vector<double>& breakpoints);

// Inserts t unless an existing breakpoint lies within merge_tol of it.
std::vector<double> Refine(std::vector<double> breakpoints, double t,
                           double merge_tol = kDefaultMergeTolerance);

// One convex quadratic piece a p^2 + b p + c on [lo, hi].
struct QuadPiece {
  double lo = 0.0;
  double hi = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double Value(double p) const { return (a * p + b) * p + c; }
  double Slope(double p) const { return 2.0 * a * p + b; }
};

// Continuous piecewise-quadratic function over [pieces.front().lo,
// pieces.back().hi]; pieces are contiguous.
struct PiecewiseQuadratic {
  std::vector<QuadPiece> pieces;

  double lo() const { return pieces.front().lo; }
  double hi() const { return pieces.back().hi; }
  // Boundary points belong to the left piece.
  std::size_t PieceOf(double p) const;
  double operator()(double p) const;
  // True when the slope drops across the boundary between pieces j and j + 1.
  bool ConcaveAfter(std::size_t j) const;
};

// Surrogate cost of a generator: fuel curve plus d * pwl(sawtooth(e (p - p_min))),
// expressed as explicit quadratic pieces over [p_min, p_max].
PiecewiseQuadratic Compile(const Generator& g, const PiecewiseLinear& pwl);

}  // namespace valvepoint

#endif  // VALVEPOINT_SURROGATE_HPP_
