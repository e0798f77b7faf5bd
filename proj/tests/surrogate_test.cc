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
#include "valvepoint/model.hpp"
#include "valvepoint/surrogate.hpp"

namespace valvepoint {
namespace {

TEST_CASE("sawtooth folds onto the nearest multiple of pi") {
  CHECK(Sawtooth(0.0).t == 0.0);
  CHECK(Sawtooth(0.0).k == 0);
  CHECK(Sawtooth(kHalfPi).t == doctest::Approx(kHalfPi));
  CHECK(Sawtooth(kHalfPi).k == 0);  // tie goes to the smaller multiple
  CHECK(Sawtooth(4.0).t == doctest::Approx(4.0 - kPi));
  CHECK(Sawtooth(4.0).k == 1);
  CHECK(Sawtooth(2.0).t == doctest::Approx(kPi - 2.0));
  CHECK(Sawtooth(2.0).k == 1);
  CHECK(Sawtooth(10.0).k == 3);
  CHECK(Sawtooth(10.0).t == doctest::Approx(std::abs(10.0 - 3.0 * kPi)));
}

TEST_CASE("sawtooth reproduces |sin|") {
  for (double x = 0.0; x < 40.0; x += 0.0137) {
    const SawtoothPoint s = Sawtooth(x);
    CHECK(s.t >= 0.0);
    CHECK(s.t <= kHalfPi + 1e-15);
    CHECK(std::sin(s.t) == doctest::Approx(std::abs(std::sin(x))).epsilon(1e-12));
  }
}

TEST_CASE("identity surrogate is one unit-slope segment") {
  const PiecewiseLinear id = IdentityPwl();
  CHECK(id.segments() == 1);
  CHECK(id.kind == SurrogateKind::kIdentity);
  CHECK(id(1.0) == 1.0);
}

TEST_CASE("tangent surrogate intersections for the default angles") {
  const PiecewiseLinear tan = TangentPwl({});
  REQUIRE(tan.breakpoints.size() == 4);
  CHECK(tan.kind == SurrogateKind::kOver);
  CHECK(tan.breakpoints[1] == doctest::Approx(0.71760271).epsilon(1e-8));
  CHECK(tan.breakpoints[2] == doctest::Approx(1.29150203).epsilon(1e-8));
  CHECK(tan.slopes[1] == doctest::Approx(std::cos(0.35 * kPi)));
  CHECK(tan.slopes[2] == doctest::Approx(std::cos(0.47 * kPi)));
}

TEST_CASE("tangent surrogate matches its absolute-value form") {
  // Four-digit coefficients, so agreement is to about 1e-3.
  const PiecewiseLinear tan = TangentPwl({});
  for (double t = 0.0; t <= kHalfPi; t += 0.01) {
    const double ref = -0.2730 * std::abs(t - 0.7176) -
                       0.1799 * std::abs(t - 1.2915) + 0.5471 * t + 0.4283;
    CHECK(std::abs(tan(t) - ref) < 2e-3);
  }
}

TEST_CASE("tangent angles must be ordered inside the quarter period") {
  CHECK_THROWS_AS(TangentPwl({0.47 * kPi, 0.35 * kPi}), Error);
  CHECK_THROWS_AS(TangentPwl({0.0, 0.47 * kPi}), Error);
  CHECK_THROWS_AS(TangentPwl({0.35 * kPi, kHalfPi}), Error);
}

TEST_CASE("initial chord has slope 2/pi") {
  const PiecewiseLinear ch = ChordPwl({0.0, kHalfPi});
  CHECK(ch.kind == SurrogateKind::kUnder);
  REQUIRE(ch.segments() == 1);
  CHECK(ch.slopes[0] == doctest::Approx(2.0 / kPi));
  CHECK(ch.intercepts[0] == doctest::Approx(0.0));
}

TEST_CASE("chord refined at 1 matches its absolute-value form") {
  const PiecewiseLinear ch = ChordPwl(Refine({0.0, kHalfPi}, 1.0));
  REQUIRE(ch.segments() == 2);
  for (double t = 0.0; t <= kHalfPi; t += 0.01) {
    const double ref = -0.2819 * (std::abs(t - 1.0) - 1.0) + 0.5596 * t;
    CHECK(std::abs(ch(t) - ref) < 2e-4);
  }
  CHECK(ch(1.0) == doctest::Approx(std::sin(1.0)));
}

TEST_CASE("refine inserts in order and merges near duplicates") {
  std::vector<double> bp{0.0, kHalfPi};
  bp = Refine(bp, 1.0);
  bp = Refine(bp, 0.5);
  CHECK(bp == std::vector<double>{0.0, 0.5, 1.0, kHalfPi});
  CHECK(Refine(bp, 1.0 + 1e-12).size() == 4);
  CHECK(Refine(bp, 0.0).size() == 4);
  CHECK(Refine(bp, kHalfPi).size() == 4);
  CHECK(Refine(bp, 1.0 + 1e-6).size() == 5);
}

TEST_CASE("chord breakpoints must span the quarter period") {
  CHECK_THROWS_AS(ChordPwl({0.1, kHalfPi}), Error);
  CHECK_THROWS_AS(ChordPwl({0.0, 1.0}), Error);
  CHECK_THROWS_AS(ChordPwl({0.0, 1.0, 1.0, kHalfPi}), Error);
}

TEST_CASE("over and under surrogates bracket sin on a fine sample") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const PiecewiseLinear under = ChordPwl(testing::RandomBreakpoints(rng, 8));
    std::uniform_real_distribution<double> th(0.05, 1.5);
    double t1 = th(rng), t2 = th(rng);
    if (t1 > t2) std::swap(t1, t2);
    if (t2 - t1 < 1e-3) t2 = t1 + 1e-3;
    const PiecewiseLinear over = TangentPwl({t1, t2});
    for (int i = 0; i <= 1000; ++i) {
      const double t = kHalfPi * i / 1000.0;
      CHECK(under(t) <= std::sin(t) + 1e-9);
      CHECK(over(t) >= std::sin(t) - 1e-9);
    }
  }
}

TEST_CASE("refinement never lowers the chord surrogate") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, kHalfPi);
  std::vector<double> bp{0.0, kHalfPi};
  for (int step = 0; step < 30; ++step) {
    const PiecewiseLinear before = ChordPwl(bp);
    bp = Refine(bp, u(rng));
    const PiecewiseLinear after = ChordPwl(bp);
    for (int i = 0; i <= 1000; ++i) {
      const double t = kHalfPi * i / 1000.0;
      CHECK(after(t) >= before(t) - 1e-12);
    }
  }
}

TEST_CASE("identity compile on a short unit is a single shifted quadratic") {
  // e * (p_max - p_min) <= pi / 2 keeps the argument on the rising flank.
  const Generator g{0.002, 9.0, 150.0, 80.0, 0.01, 100.0, 250.0};
  const PiecewiseQuadratic q = Compile(g, IdentityPwl());
  REQUIRE(q.pieces.size() == 1);
  CHECK(q.pieces[0].a == doctest::Approx(g.a));
  CHECK(q.pieces[0].b == doctest::Approx(g.b + g.d * g.e));
  CHECK(q.pieces[0].c == doctest::Approx(g.c - g.d * g.e * g.p_min));
  CHECK(q.lo() == g.p_min);
  CHECK(q.hi() == g.p_max);
}

TEST_CASE("zero amplitude compiles to the plain quadratic") {
  const Generator g{0.002, 9.0, 150.0, 0.0, 0.5, 100.0, 250.0};
  const PiecewiseQuadratic q = Compile(g, TangentPwl({}));
  REQUIRE(q.pieces.size() == 1);
  CHECK(q(180.0) == doctest::Approx(FuelCost(g, 180.0)));
}

TEST_CASE("compiled pieces tile the box and evaluate the surrogate cost") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const DispatchProblem prob =
        testing::RandomInstance(rng, {1, 5.0, 60.0, 2.0});
    const Generator& g = prob.generators[0];
    const PiecewiseLinear pwls[] = {IdentityPwl(), TangentPwl({}),
                                    ChordPwl(testing::RandomBreakpoints(rng, 5))};
    for (const PiecewiseLinear& pwl : pwls) {
      const PiecewiseQuadratic q = Compile(g, pwl);
      CHECK(q.lo() == g.p_min);
      CHECK(q.hi() == g.p_max);
      for (std::size_t j = 1; j < q.pieces.size(); ++j) {
        CHECK(q.pieces[j].lo == q.pieces[j - 1].hi);
      }
      for (int i = 0; i <= 200; ++i) {
        const double p = g.p_min + (g.p_max - g.p_min) * i / 200.0;
        const double ref =
            FuelCost(g, p) + g.d * pwl(Sawtooth(g.e * (p - g.p_min)).t);
        CHECK(q(p) == doctest::Approx(ref).epsilon(1e-9));
        if (pwl.kind == SurrogateKind::kUnder) CHECK(q(p) <= UnitCost(g, p) + 1e-7);
        if (pwl.kind == SurrogateKind::kOver) CHECK(q(p) >= UnitCost(g, p) - 1e-7);
      }
    }
  }
}

}  // namespace
}  // namespace valvepoint
