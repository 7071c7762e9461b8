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

#ifndef OMG_ADVERSARIES_H_
#define OMG_ADVERSARIES_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "omg/game.h"

namespace omg {

enum class AdversaryKind {
  kFixed,
  kTheorem1Scenario1,
  kTheorem1Scenario2,
  kRandomBounded,
  kAdaptiveBestResponse,
};

const char* AdversaryName(AdversaryKind kind);
AdversaryKind ParseAdversaryKind(const std::string& name);

struct AdversarySpec {
  AdversaryKind kind = AdversaryKind::kFixed;
  int d1 = 2;
  int d2 = 2;
  double bound = 1.0;
  long horizon = 0;
  std::uint64_t seed = 0;
  // Required for kFixed.
  std::optional<Matrix> matrix;

  // Throws ConfigError on inconsistent fields (odd horizon or non-2x2 for the
  // impossibility scenarios, missing or out-of-bound fixed matrix, ...).
  void Validate() const;
};

// [[1, -1], [-1, 1]] scaled by c.
Matrix MatchingPennies(double c = 1.0);

// The d1 x d2 parity game P_ij = +c if i and j have the same parity, -c
// otherwise. Equals MatchingPennies for 2x2.
Matrix ParityGame(int d1, int d2, double c = 1.0);

// Payoff matrix for round t (1-based). Only records with record.t < t are
// consulted, so the current round's actions can never influence emission.
// random_bounded entries are a pure function of (seed, t).
PayoffMatrix Emit(const AdversarySpec& spec, long t,
                  std::span<const RoundRecord> history = {});

}  // namespace omg

#endif  // OMG_ADVERSARIES_H_
