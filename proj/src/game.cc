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
#include <sstream>
#include <string>
#include <utility>

#include "omg/errors.h"

namespace omg {
namespace {

void CheckFloor(int d, double floor) {
  if (!(floor >= 0.0) || !std::isfinite(floor)) {
    throw DomainError("strategy floor must be a finite nonnegative number");
  }
  if (floor * d > 1.0 + kSimplexTol) {
    std::ostringstream msg;
    msg << "restricted simplex is empty: floor " << floor << " > 1/" << d;
    throw EmptySetError(msg.str());
  }
}

}  // namespace

PayoffMatrix::PayoffMatrix(Matrix entries)
    : PayoffMatrix(entries, entries.size() == 0
                                ? 0.0
                                : entries.cwiseAbs().maxCoeff()) {}

PayoffMatrix::PayoffMatrix(Matrix entries, double bound)
    : entries_(std::move(entries)), bound_(bound) {
  if (entries_.rows() < 2 || entries_.cols() < 2) {
    std::ostringstream msg;
    msg << "payoff matrix must be at least 2x2, got " << entries_.rows() << "x"
        << entries_.cols();
    throw ConfigError(msg.str());
  }
  if (!entries_.allFinite()) {
    throw ConfigError("payoff matrix has non-finite entries");
  }
  if (!(bound_ >= 0.0) || !std::isfinite(bound_)) {
    throw ConfigError("payoff bound must be finite and nonnegative");
  }
  const double max_abs = entries_.cwiseAbs().maxCoeff();
  if (max_abs > bound_) {
    std::ostringstream msg;
    msg << "payoff entry magnitude " << max_abs << " exceeds declared bound "
        << bound_;
    throw ConfigError(msg.str());
  }
}

PayoffMatrix PayoffMatrix::Zeros(int d1, int d2) {
  return PayoffMatrix(Matrix::Zero(d1, d2), 0.0);
}

MixedStrategy::MixedStrategy(Vector weights, double floor)
    : weights_(std::move(weights)), floor_(floor) {
  const int d = static_cast<int>(weights_.size());
  if (d < 1) throw DomainError("strategy must have at least one coordinate");
  CheckFloor(d, floor_);
  if (!weights_.allFinite()) {
    throw DomainError("strategy has non-finite weights");
  }
  const double sum = weights_.sum();
  if (std::abs(sum - 1.0) > kSimplexTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "strategy weights sum to " << sum << ", not 1";
    throw DomainError(msg.str());
  }
  const double lo = weights_.minCoeff();
  if (lo < floor_ - kSimplexTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "strategy weight " << lo << " is below floor " << floor_;
    throw DomainError(msg.str());
  }
}

MixedStrategy MixedStrategy::Normalized(Vector weights, double floor) {
  const double sum = weights.sum();
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    throw DomainError("cannot normalize weights with nonpositive sum");
  }
  weights /= sum;
  return MixedStrategy(std::move(weights), floor);
}

MixedStrategy MixedStrategy::Uniform(int d, double floor) {
  return MixedStrategy(Vector::Constant(d, 1.0 / d), floor);
}

MixedStrategy MixedStrategy::Vertex(int d, int index) {
  Vector w = Vector::Zero(d);
  w[index] = 1.0;
  return MixedStrategy(std::move(w), 0.0);
}

MixedStrategy MixedStrategy::WithFloor(double floor) const {
  return MixedStrategy(weights_, floor);
}

double Payoff(const PayoffMatrix& a, const MixedStrategy& x,
              const MixedStrategy& y) {
  if (x.size() != a.rows() || y.size() != a.cols()) {
    std::ostringstream msg;
    msg << "payoff dimension mismatch: matrix " << a.rows() << "x" << a.cols()
        << ", strategies " << x.size() << " and " << y.size();
    throw ConfigError(msg.str());
  }
  return x.weights().dot(a.entries() * y.weights());
}

double LipschitzL1(const PayoffMatrix& a) { return a.bound(); }

double LipschitzL2(const PayoffMatrix& a) {
  return std::sqrt(a.bound()) *
         (std::sqrt(static_cast<double>(a.rows())) +
          std::sqrt(static_cast<double>(a.cols())));
}

MixedStrategy ProjectRestricted(const MixedStrategy& z, double theta) {
  const int d = z.size();
  CheckFloor(d, theta);
  const Vector& w = z.weights();

  double added = 0.0;
  double slack = 0.0;
  for (int i = 0; i < d; ++i) {
    if (w[i] < theta) {
      added += theta - w[i];
    } else {
      slack += w[i] - theta;
    }
  }
  if (added == 0.0) return MixedStrategy(w, theta);

  // Mass conservation guarantees slack >= added whenever theta <= 1/d, so a
  // single proportional pass lands on the restricted simplex. Each removal is
  // rounded down by a few ulps so the moved mass never exceeds `added`.
  const double ratio = slack > 0.0 ? std::min(1.0, added / slack) : 0.0;
  Vector out(d);
  for (int i = 0; i < d; ++i) {
    if (w[i] < theta) {
      out[i] = theta;
      continue;
    }
    const double removed = std::max(
        0.0, (w[i] - theta) * ratio -
                 4.0 * std::numeric_limits<double>::epsilon() * w[i]);
    out[i] = std::max(theta, w[i] - removed);
  }
  return MixedStrategy(std::move(out), theta);
}

MixedStrategy BestResponseLinear(const Vector& score, double theta,
                                 bool maximize) {
  const int d = static_cast<int>(score.size());
  CheckFloor(d, theta);
  int best = 0;
  for (int i = 1; i < d; ++i) {
    if (maximize ? score[i] > score[best] : score[i] < score[best]) best = i;
  }
  Vector out = Vector::Constant(d, theta);
  out[best] += 1.0 - theta * d;
  return MixedStrategy(std::move(out), theta);
}

double L1Distance(const Vector& a, const Vector& b) {
  return (a - b).cwiseAbs().sum();
}

}  // namespace omg
