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

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "test_support.hpp"
#include "valvepoint/envelope.hpp"
#include "valvepoint/surrogate.hpp"

namespace valvepoint {
namespace {

void CheckEnvelope(const PiecewiseQuadratic& q, const ConvexEnvelope& env) {
  CHECK(env.lo() == q.lo());
  CHECK(env.hi() == q.hi());
  const double span = q.hi() - q.lo();
  const double scale = 1.0 + std::abs(q(q.lo())) + std::abs(q(q.hi()));
  const int samples = 2000;
  std::vector<double> v(samples + 1);
  for (int i = 0; i <= samples; ++i) {
    const double p = q.lo() + span * i / samples;
    v[i] = env(p);
    CHECK(v[i] <= q(p) + 1e-9 * scale);
  }
  // Midpoint convexity on the sample grid.
  for (int i = 1; i < samples; ++i) {
    CHECK(v[i] <= 0.5 * (v[i - 1] + v[i + 1]) + 1e-9 * scale);
  }
  // Touches the source at both ends.
  CHECK(env(q.lo()) == doctest::Approx(q(q.lo())));
  CHECK(env(q.hi()) == doctest::Approx(q(q.hi())));
  REQUIRE(env.bridge_flags().size() == env.pieces().size());
  for (std::size_t j = 0; j < env.pieces().size(); ++j) {
    CHECK(env.pieces()[j].a >= 0.0);
    if (env.bridge_flags()[j]) CHECK(env.pieces()[j].a == 0.0);
  }
}

TEST_CASE("envelope of a convex function is the function itself") {
  PiecewiseQuadratic q{{{0.0, 1.0, 1.0, 0.0, 0.0}, {1.0, 3.0, 0.5, 1.0, -0.5}}};
  const ConvexEnvelope env = ConvexEnvelopeOf(q, 0.0, 3.0);
  for (double p = 0.0; p <= 3.0; p += 0.01) {
    CHECK(env(p) == doctest::Approx(q(p)).epsilon(1e-12));
  }
  for (bool b : env.bridge_flags()) CHECK_FALSE(b);
}

TEST_CASE("a V junction of two parabolas is bridged by their common tangent") {
  // Left: (p + 1)^2 on [-2, 0]; right: (p - 1)^2 on [0, 2]. The hull is 0
  // between -1 and 1.
  PiecewiseQuadratic q{{{-2.0, 0.0, 1.0, 2.0, 1.0}, {0.0, 2.0, 1.0, -2.0, 1.0}}};
  CHECK(q.ConcaveAfter(0));
  const ConvexEnvelope env = ConvexEnvelopeOf(q, -2.0, 2.0);
  CHECK(env(0.0) == doctest::Approx(0.0));
  CHECK(env(-1.0) == doctest::Approx(0.0));
  CHECK(env(1.0) == doctest::Approx(0.0));
  CHECK(env(-1.5) == doctest::Approx(0.25));
  CHECK(env(1.5) == doctest::Approx(0.25));
  const Bitangent bt = LowerBitangent(q.pieces[0], -2.0, 0.0, q.pieces[1], 0.0, 2.0);
  CHECK(bt.slope == doctest::Approx(0.0));
  CHECK(bt.left_contact == doctest::Approx(-1.0));
  CHECK(bt.right_contact == doctest::Approx(1.0));
  CheckEnvelope(q, env);
}

TEST_CASE("bitangent contacts may sit at piece ends") {
  // Rising line then a steeper falling line: the hull is the chord.
  QuadPiece left{0.0, 1.0, 0.0, 5.0, 0.0};
  QuadPiece right{1.0, 2.0, 0.0, -10.0, 15.0};
  const Bitangent bt = LowerBitangent(left, 0.0, 1.0, right, 1.0, 2.0);
  CHECK(bt.left_contact == doctest::Approx(0.0));
  CHECK(bt.right_contact == doctest::Approx(2.0));
  CHECK(bt.slope == doctest::Approx(-2.5));
}

TEST_CASE("argmin and subdifferential agree with the slope structure") {
  PiecewiseQuadratic q{{{-2.0, 0.0, 1.0, 2.0, 1.0}, {0.0, 2.0, 1.0, -2.0, 1.0}}};
  const ConvexEnvelope env = ConvexEnvelopeOf(q, -2.0, 2.0);
  CHECK(env.ArgminLeft(0.0) == doctest::Approx(-1.0));
  CHECK(env.ArgminRight(0.0) == doctest::Approx(1.0));
  CHECK(env.ArgminLeft(-100.0) == doctest::Approx(-2.0));
  CHECK(env.ArgminRight(100.0) == doctest::Approx(2.0));
  CHECK(env.ArgminLeft(1.0) == doctest::Approx(1.5));
  auto [lo, hi] = env.Subdifferential(-2.0);
  CHECK(std::isinf(lo));
  CHECK(hi == doctest::Approx(-2.0));
}

TEST_CASE("envelopes of compiled valve-point costs") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const DispatchProblem prob = testing::RandomInstance(rng, {1, 5.0, 80.0, 2.0});
    const Generator& g = prob.generators[0];
    for (const PiecewiseLinear& pwl :
         {IdentityPwl(), TangentPwl({}), ChordPwl(testing::RandomBreakpoints(rng, 6))}) {
      const PiecewiseQuadratic q = Compile(g, pwl);
      CheckEnvelope(q, ConvexEnvelopeOf(q, q.lo(), q.hi()));
    }
  }
}

TEST_CASE("envelope over a sub-interval and a single point") {
  const Generator g{0.00533, 11.669, 213.1, 130.0, 0.0635, 50.0, 200.0};
  const PiecewiseQuadratic q = Compile(g, IdentityPwl());
  const ConvexEnvelope sub = ConvexEnvelopeOf(q, 80.0, 140.0);
  CHECK(sub.lo() == 80.0);
  CHECK(sub.hi() == 140.0);
  for (double p = 80.0; p <= 140.0; p += 0.5) CHECK(sub(p) <= q(p) + 1e-9);
  const ConvexEnvelope point = ConvexEnvelopeOf(q, 100.0, 100.0);
  CHECK(point(100.0) == doctest::Approx(q(100.0)));
}

}  // namespace
}  // namespace valvepoint
