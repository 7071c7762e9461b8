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

#include "omg/regularizers.h"

#include <cmath>
#include <random>

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "omg/errors.h"
#include "oracles.h"

namespace omg {
namespace {

TEST_CASE("Entropy is zero at uniform and ln d at a vertex") {
  for (int d : {2, 3, 7}) {
    const NegEntropy r(d);
    CHECK(std::abs(r.Value(MixedStrategy::Uniform(d))) <= 1e-14);
    CHECK(r.Value(MixedStrategy::Vertex(d, 0)) == doctest::Approx(std::log(d)));
  }
}

TEST_CASE("Entropy gradient matches central differences") {
  std::mt19937_64 gen(1);
  const int d = 5;
  const NegEntropy r(d);
  for (int trial = 0; trial < 50; ++trial) {
    const Vector x = oracle::RandomSimplexPoint(d, 0.02, gen);
    const Vector g = r.Gradient(x);
    const double h = 1e-6;
    for (int i = 0; i < d; ++i) {
      Vector up = x, dn = x;
      up[i] += h;
      dn[i] -= h;
      const double fd = (r.Value(up) - r.Value(dn)) / (2 * h);
      CHECK(g[i] == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("Entropy gradient is undefined on the boundary") {
  const NegEntropy r(2);
  CHECK_THROWS_AS(r.Gradient(MixedStrategy::Vertex(2, 1)), DomainError);
  CHECK_THROWS_AS(NegEntropy::LipschitzBound(0.0), DomainError);
}

TEST_CASE("Gradient sup norm respects the floored bound") {
  std::mt19937_64 gen(2);
  for (double theta : {1e-3, 0.05, 0.2}) {
    const int d = 4;
    const NegEntropy r(d);
    for (int trial = 0; trial < 200; ++trial) {
      const Vector x = oracle::RandomSimplexPoint(d, theta, gen);
      CHECK(r.Gradient(x).cwiseAbs().maxCoeff() <=
            NegEntropy::LipschitzBound(theta) + 1e-12);
    }
  }
}

TEST_CASE("Entropy is Lipschitz on the floored simplex") {
  std::mt19937_64 gen(4);
  const double theta = 0.01;
  const NegEntropy r(3);
  for (int trial = 0; trial < 500; ++trial) {
    const Vector a = oracle::RandomSimplexPoint(3, theta, gen);
    const Vector b = oracle::RandomSimplexPoint(3, theta, gen);
    CHECK(std::abs(r.Value(a) - r.Value(b)) <=
          NegEntropy::LipschitzBound(theta) * (a - b).cwiseAbs().sum() + 1e-12);
  }
}

TEST_CASE("Clipped softmax satisfies KKT") {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int trial = 0; trial < 500; ++trial) {
    const int d = 2 + trial % 6;
    Vector score(d);
    for (int i = 0; i < d; ++i) score[i] = u(gen);
    const double scale = std::pow(10.0, (trial % 7) - 3);
    const double theta = (trial % 3) * 0.3 / d;
    const bool maximize = trial % 2 == 0;
    const MixedStrategy y = ClippedSoftmax(score, scale, theta, maximize);
    CHECK(y.weights().minCoeff() >= theta - 1e-12);
    CHECK(ClippedSoftmaxKktResidual(score, scale, theta, maximize,
                                    y.weights()) <= 1e-10);
  }
}

TEST_CASE("Clipped softmax matches a golden-section optimum in 2D") {
  std::mt19937_64 gen(10);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double a = u(gen), b = u(gen);
    Vector score(2);
    score << a, b;
    const double scale = 0.5;
    const double theta = 0.1;
    auto f = [&](double p) {
      return a * p + b * (1 - p) + scale * oracle::Entropy2(p);
    };
    const MixedStrategy x = ClippedSoftmax(score, scale, theta, false);
    const double best = oracle::GoldenMin(f, theta, 1 - theta);
    CHECK(f(x[0]) <= best + 1e-12);
  }
}

TEST_CASE("Clipped softmax without floor is a softmax") {
  Vector score(3);
  score << 1.0, 2.0, 3.0;
  const MixedStrategy y = ClippedSoftmax(score, 1.0, 0.0, true);
  const double z = std::exp(1.0) + std::exp(2.0) + std::exp(3.0);
  CHECK(y[2] == doctest::Approx(std::exp(3.0) / z).epsilon(1e-14));
}

TEST_CASE("Clipped softmax handles extreme scores") {
  Vector score(3);
  score << 1e6, -1e6, 0.0;
  const MixedStrategy y = ClippedSoftmax(score, 1e-3, 0.01, true);
  CHECK(y[0] == doctest::Approx(0.98));
  CHECK(y[1] == doctest::Approx(0.01));
  Vector bad(2);
  bad << 1.0, std::nan("");
  CHECK_THROWS_AS(ClippedSoftmax(bad, 1.0, 0.0, true), NumericError);
}

}  // namespace
}  // namespace omg
