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

#include "omg/adversaries.h"

#include <cmath>

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "omg/errors.h"

namespace omg {
namespace {

AdversarySpec Spec(AdversaryKind kind, long horizon) {
  AdversarySpec s;
  s.kind = kind;
  s.horizon = horizon;
  return s;
}

TEST_CASE("Step-change sequences switch at the midpoint") {
  const AdversarySpec s1 = Spec(AdversaryKind::kTheorem1Scenario1, 4);
  const AdversarySpec s2 = Spec(AdversaryKind::kTheorem1Scenario2, 4);
  Matrix after2(2, 2);
  after2 << 1, -1, 1, -1;
  for (long t = 1; t <= 4; ++t) {
    if (t <= 2) {
      CHECK(Emit(s1, t).entries() == MatchingPennies());
      CHECK(Emit(s2, t).entries() == MatchingPennies());
    } else {
      CHECK(Emit(s1, t).entries() == Matrix::Zero(2, 2));
      CHECK(Emit(s2, t).entries() == after2);
    }
  }
  CHECK_THROWS_AS(Emit(s1, 5), ConfigError);
}

TEST_CASE("Step-change sequences need an even 2x2 horizon") {
  CHECK_THROWS_AS(Spec(AdversaryKind::kTheorem1Scenario1, 5).Validate(),
                  ConfigError);
  AdversarySpec wide = Spec(AdversaryKind::kTheorem1Scenario2, 4);
  wide.d2 = 3;
  CHECK_THROWS_AS(wide.Validate(), ConfigError);
  CHECK_NOTHROW(Spec(AdversaryKind::kTheorem1Scenario2, 6).Validate());
}

TEST_CASE("Fixed adversary repeats its matrix") {
  AdversarySpec s = Spec(AdversaryKind::kFixed, 3);
  CHECK_THROWS_AS(s.Validate(), ConfigError);
  s.matrix = Matrix::Constant(2, 3, 0.5);
  CHECK_THROWS_AS(s.Validate(), ConfigError);
  s.d2 = 3;
  CHECK_NOTHROW(s.Validate());
  CHECK(Emit(s, 3).entries() == *s.matrix);
  s.bound = 0.25;
  CHECK_THROWS_AS(s.Validate(), ConfigError);
}

TEST_CASE("Random adversary is a pure function of seed and round") {
  AdversarySpec s = Spec(AdversaryKind::kRandomBounded, 2000);
  s.d1 = 3;
  s.d2 = 4;
  s.bound = 2.5;
  s.seed = 42;
  double sum = 0.0;
  for (long t = 1; t <= 2000; ++t) {
    const Matrix a = Emit(s, t).entries();
    CHECK(a.cwiseAbs().maxCoeff() <= 2.5);
    sum += a.sum();
  }
  CHECK(Emit(s, 17).entries() == Emit(s, 17).entries());
  CHECK(Emit(s, 17).entries() != Emit(s, 18).entries());
  AdversarySpec other = s;
  other.seed = 43;
  CHECK(Emit(s, 5).entries() != Emit(other, 5).entries());
  // Mean of 24000 uniforms on [-2.5, 2.5]; standard error about 0.009.
  CHECK(std::abs(sum / 24000.0) < 0.05);
}

TEST_CASE("Adaptive adversary maximizes the row player's last loss") {
  AdversarySpec s = Spec(AdversaryKind::kAdaptiveBestResponse, 10);
  CHECK(Emit(s, 1).entries() == MatchingPennies());
  Vector skew(2);
  skew << 0.9, 0.1;
  const MixedStrategy a(skew);
  const MixedStrategy b = MixedStrategy::Vertex(2, 1);
  std::vector<RoundRecord> history = {RoundRecord{1, a, b, {}, 0.0}};
  // x' P y = 0.9 * -1 + 0.1 * 1 < 0, so -P gives the larger loss.
  CHECK(Emit(s, 2, history).entries() == -MatchingPennies());
  history.push_back(RoundRecord{2, a, a, {}, 0.0});
  CHECK(Emit(s, 3, history).entries() == MatchingPennies());
  history = {RoundRecord{1, MixedStrategy::Uniform(2), b, {}, 0.0}};
  CHECK(Emit(s, 2, history).entries() == MatchingPennies());
}

TEST_CASE("Adversary names round-trip") {
  for (AdversaryKind k :
       {AdversaryKind::kFixed, AdversaryKind::kTheorem1Scenario1,
        AdversaryKind::kTheorem1Scenario2, AdversaryKind::kRandomBounded,
        AdversaryKind::kAdaptiveBestResponse}) {
    CHECK(ParseAdversaryKind(AdversaryName(k)) == k);
  }
  CHECK_THROWS_AS(ParseAdversaryKind("oracle"), ConfigError);
}

TEST_CASE("Parity game generalizes matching pennies") {
  CHECK(ParityGame(2, 2, 1.0) == MatchingPennies());
  const Matrix p = ParityGame(3, 4, 2.0);
  CHECK(p(2, 3) == -2.0);
  CHECK(p(2, 2) == 2.0);
}

}  // namespace
}  // namespace omg
