// Copyright 2026 The OMG-RFTL Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "omg/game.h"

#include <cmath>
#include <limits>
#include <random>

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "omg/errors.h"
#include "oracles.h"

namespace omg {
namespace {

TEST_CASE("PayoffMatrix rejects bad input") {
  CHECK_THROWS_AS(PayoffMatrix(Matrix::Zero(1, 3)), ConfigError);
  Matrix nan = Matrix::Zero(2, 2);
  nan(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(PayoffMatrix{nan}, ConfigError);
  Matrix big(2, 2);
  big << 1, 2, 3, 4;
  CHECK_THROWS_AS(PayoffMatrix(big, 3.0), ConfigError);
  CHECK(PayoffMatrix(big).bound() == 4.0);
}

TEST_CASE("MixedStrategy validation") {
  CHECK_THROWS(MixedStrategy(Vector::Constant(3, 0.3)));
  Vector neg(2);
  neg << 1.5, -0.5;
  CHECK_THROWS(MixedStrategy(neg));
  Vector w(3);
  w << 0.05, 0.45, 0.5;
  CHECK_THROWS(MixedStrategy(w, 0.1));
  CHECK_THROWS_AS(MixedStrategy::Uniform(4, 0.3), EmptySetError);
  const MixedStrategy u = MixedStrategy::Uniform(4, 0.25);
  CHECK(u[2] == doctest::Approx(0.25));
  const MixedStrategy v = MixedStrategy::Vertex(3, 1);
  CHECK(v[1] == 1.0);
  CHECK(v[0] == 0.0);
}

TEST_CASE("Payoff of matching pennies at uniform play is zero") {
  Matrix a(2, 2);
  a << 1, -1, -1, 1;
  const PayoffMatrix m(a);
  CHECK(Payoff(m, MixedStrategy::Uniform(2), MixedStrategy::Uniform(2)) == 0.0);
  CHECK(Payoff(m, MixedStrategy::Vertex(2, 0), MixedStrategy::Vertex(2, 1)) ==
        -1.0);
  CHECK_THROWS_AS(
      Payoff(m, MixedStrategy::Uniform(3), MixedStrategy::Uniform(2)),
      ConfigError);
}

TEST_CASE("Bilinear payoff is Lipschitz in the l1 norm") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int d1 = 2 + trial % 4;
    const int d2 = 2 + (trial / 4) % 4;
    const PayoffMatrix a(oracle::RandomMatrix(d1, d2, 2.0, gen), 2.0);
    const MixedStrategy x(oracle::RandomSimplexPoint(d1, 0.0, gen));
    const MixedStrategy x2(oracle::RandomSimplexPoint(d1, 0.0, gen));
    const MixedStrategy y(oracle::RandomSimplexPoint(d2, 0.0, gen));
    const MixedStrategy y2(oracle::RandomSimplexPoint(d2, 0.0, gen));
    const double lhs = std::abs(Payoff(a, x, y) - Payoff(a, x2, y2));
    const double rhs =
        LipschitzL1(a) * (L1Distance(x.weights(), x2.weights()) +
                          L1Distance(y.weights(), y2.weights()));
    CHECK(lhs <= rhs + 1e-12);
  }
}

TEST_CASE("Restricted projection stays within 2 theta (d - 1)") {
  std::mt19937_64 gen(5);
  std::uniform_int_distribution<int> dim(2, 8);
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = dim(gen);
    const double theta = frac(gen) / d;
    const MixedStrategy z(oracle::RandomSimplexPoint(d, 0.0, gen));
    const MixedStrategy p = ProjectRestricted(z, theta);
    CHECK(p.weights().minCoeff() >= theta - 1e-12);
    CHECK(std::abs(p.weights().sum() - 1.0) <= 1e-12);
    CHECK(L1Distance(p.weights(), z.weights()) <= 2.0 * theta * (d - 1));
  }
}

TEST_CASE("Projection leaves interior points alone") {
  Vector w(3);
  w << 0.2, 0.3, 0.5;
  const MixedStrategy p = ProjectRestricted(MixedStrategy(w), 0.1);
  CHECK(p.weights() == w);
}

TEST_CASE("Linear best response beats random points") {
  std::mt19937_64 gen(3);
  for (double theta : {0.0, 0.05, 0.2}) {
    const int d = 4;
    Vector score = oracle::RandomMatrix(d, 1, 1.0, gen).col(0);
    const MixedStrategy lo = BestResponseLinear(score, theta, false);
    const MixedStrategy hi = BestResponseLinear(score, theta, true);
    CHECK(lo.weights().minCoeff() >= theta - 1e-12);
    for (int k = 0; k < 10000; ++k) {
      const Vector p = oracle::RandomSimplexPoint(d, theta, gen);
      CHECK(score.dot(lo.weights()) <= score.dot(p) + 1e-12);
      CHECK(score.dot(hi.weights()) >= score.dot(p) - 1e-12);
    }
  }
}

TEST_CASE("Best response breaks ties toward the lowest index") {
  const Vector score = Vector::Constant(3, 1.0);
  CHECK(BestResponseLinear(score, 0.0, false)[0] == 1.0);
  CHECK(BestResponseLinear(score, 0.0, true)[0] == 1.0);
}

TEST_CASE("l2 Lipschitz constant") {
  const PayoffMatrix a(Matrix::Constant(4, 9, 0.5), 1.0);
  CHECK(LipschitzL2(a) == doctest::Approx(std::sqrt(1.0) * (2.0 + 3.0)));
}

}  // namespace
}  // namespace omg
