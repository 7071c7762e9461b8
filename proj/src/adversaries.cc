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
#include <sstream>

#include "omg/errors.h"
#include "omg/rng.h"

namespace omg {

const char* AdversaryName(AdversaryKind kind) {
  switch (kind) {
    case AdversaryKind::kFixed:
      return "fixed";
    case AdversaryKind::kTheorem1Scenario1:
      return "theorem1_scenario1";
    case AdversaryKind::kTheorem1Scenario2:
      return "theorem1_scenario2";
    case AdversaryKind::kRandomBounded:
      return "random_bounded";
    case AdversaryKind::kAdaptiveBestResponse:
      return "adaptive_best_response";
  }
  return "?";
}

AdversaryKind ParseAdversaryKind(const std::string& name) {
  for (AdversaryKind k :
       {AdversaryKind::kFixed, AdversaryKind::kTheorem1Scenario1,
        AdversaryKind::kTheorem1Scenario2, AdversaryKind::kRandomBounded,
        AdversaryKind::kAdaptiveBestResponse}) {
    if (name == AdversaryName(k)) return k;
  }
  throw ConfigError("unknown adversary kind '" + name + "'");
}

void AdversarySpec::Validate() const {
  if (d1 < 2 || d2 < 2) throw ConfigError("adversary dimensions must be >= 2");
  if (!(bound > 0.0) || !std::isfinite(bound)) {
    throw ConfigError("adversary bound must be finite and positive");
  }
  if (horizon < 1) throw ConfigError("adversary horizon must be >= 1");
  switch (kind) {
    case AdversaryKind::kTheorem1Scenario1:
    case AdversaryKind::kTheorem1Scenario2:
      if (horizon % 2 != 0) {
        throw ConfigError(std::string(AdversaryName(kind)) +
                          " needs an even horizon, got " +
                          std::to_string(horizon));
      }
      if (d1 != 2 || d2 != 2) {
        throw ConfigError(std::string(AdversaryName(kind)) + " is 2x2 only");
      }
      if (bound < 1.0) {
        throw ConfigError(std::string(AdversaryName(kind)) +
                          " emits unit entries; bound must be >= 1");
      }
      break;
    case AdversaryKind::kFixed: {
      if (!matrix) throw ConfigError("fixed adversary needs a matrix");
      if (matrix->rows() != d1 || matrix->cols() != d2) {
        std::ostringstream msg;
        msg << "fixed matrix is " << matrix->rows() << "x" << matrix->cols()
            << ", expected " << d1 << "x" << d2;
        throw ConfigError(msg.str());
      }
      PayoffMatrix check(*matrix, bound);
      break;
    }
    case AdversaryKind::kRandomBounded:
    case AdversaryKind::kAdaptiveBestResponse:
      break;
  }
}

Matrix MatchingPennies(double c) {
  Matrix m(2, 2);
  m << c, -c, -c, c;
  return m;
}

Matrix ParityGame(int d1, int d2, double c) {
  Matrix m(d1, d2);
  for (int i = 0; i < d1; ++i) {
    for (int j = 0; j < d2; ++j) m(i, j) = (i % 2 == j % 2) ? c : -c;
  }
  return m;
}

PayoffMatrix Emit(const AdversarySpec& spec, long t,
                  std::span<const RoundRecord> history) {
  if (t < 1 || t > spec.horizon) {
    std::ostringstream msg;
    msg << "round " << t << " outside [1, " << spec.horizon << "]";
    throw ConfigError(msg.str());
  }
  const long half = spec.horizon / 2;
  switch (spec.kind) {
    case AdversaryKind::kFixed:
      return PayoffMatrix(*spec.matrix, spec.bound);
    case AdversaryKind::kTheorem1Scenario1:
      if (t <= half) return PayoffMatrix(MatchingPennies(), spec.bound);
      return PayoffMatrix(Matrix::Zero(2, 2), spec.bound);
    case AdversaryKind::kTheorem1Scenario2: {
      if (t <= half) return PayoffMatrix(MatchingPennies(), spec.bound);
      Matrix m(2, 2);
      m << 1, -1, 1, -1;
      return PayoffMatrix(m, spec.bound);
    }
    case AdversaryKind::kRandomBounded: {
      Rng rng(spec.seed, static_cast<std::uint64_t>(t), Stream::kAdversary);
      Matrix m(spec.d1, spec.d2);
      for (int i = 0; i < spec.d1; ++i) {
        for (int j = 0; j < spec.d2; ++j) {
          m(i, j) = rng.Uniform(-spec.bound, spec.bound);
        }
      }
      return PayoffMatrix(m, spec.bound);
    }
    case AdversaryKind::kAdaptiveBestResponse: {
      const Matrix p = ParityGame(spec.d1, spec.d2, spec.bound);
      const RoundRecord* last = nullptr;
      for (const RoundRecord& r : history) {
        if (r.t < t && (last == nullptr || r.t > last->t)) last = &r;
      }
      double sign = 1.0;
      if (last != nullptr) {
        const double loss = last->x.weights().dot(p * last->y.weights());
        if (loss < 0.0) sign = -1.0;
      }
      return PayoffMatrix(sign * p, spec.bound);
    }
  }
  throw ConfigError("unhandled adversary kind");
}

}  // namespace omg
