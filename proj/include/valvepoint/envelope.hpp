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

#ifndef VALVEPOINT_ENVELOPE_HPP_
#define VALVEPOINT_ENVELOPE_HPP_

#include <utility>
#include <vector>

#include "valvepoint/surrogate.hpp"

namespace valvepoint {

// Greatest convex minorant of a piecewise-quadratic function on [lo, hi].
// Pieces are either arcs of the source function or affine bridges (a == 0)
// spanning the regions where the source is not convex.
class ConvexEnvelope {
 public:
  ConvexEnvelope() = default;
  explicit ConvexEnvelope(PiecewiseQuadratic fn) : fn_(std::move(fn)) {}

  const PiecewiseQuadratic& function() const { return fn_; }
  const std::vector<QuadPiece>& pieces() const { return fn_.pieces; }
  double lo() const { return fn_.lo(); }
  double hi() const { return fn_.hi(); }
  double operator()(double p) const { return fn_(p); }

  // Smallest / largest minimizer of env(p) - lambda * p over [lo, hi].
  double ArgminLeft(double lambda) const;
  double ArgminRight(double lambda) const;
  // One-sided derivatives at p; -inf / +inf at the domain ends.
  std::pair<double, double> Subdifferential(double p) const;
  // All one-sided piece-end slopes, for multiplier search.
  void AppendSlopes(std::vector<double>& out) const;
  // Affine pieces that are not part of the source function; bridge_flags()
  // is parallel to pieces().
  const std::vector<bool>& bridge_flags() const { return bridge_; }

 private:
  friend ConvexEnvelope ConvexEnvelopeOf(const PiecewiseQuadratic&, double,
                                         double);
  PiecewiseQuadratic fn_;
  std::vector<bool> bridge_;
};

// Requires [lo, hi] inside the domain of pwq; every piece of pwq must be
// convex (a >= 0). A degenerate interval yields a single-point envelope.
ConvexEnvelope ConvexEnvelopeOf(const PiecewiseQuadratic& pwq, double lo,
                                double hi);

// Lower common tangent of two convex arcs, the left one ending no later than
// the right one starts. Contact points and slope of the bridging line.
struct Bitangent {
  double slope = 0.0;
  double left_contact = 0.0;
  double right_contact = 0.0;
};
Bitangent LowerBitangent(const QuadPiece& left, double left_lo, double left_hi,
                         const QuadPiece& right, double right_lo,
                         double right_hi);

}  // namespace valvepoint

#endif  // VALVEPOINT_ENVELOPE_HPP_
