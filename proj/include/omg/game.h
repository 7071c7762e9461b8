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

#ifndef OMG_GAME_H_
#define OMG_GAME_H_

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace omg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Absolute tolerance on the simplex constraints of every MixedStrategy.
inline constexpr double kSimplexTol = 1e-12;

// A bounded d1 x d2 payoff matrix. Entry (i, j) is the loss of the row player
// and the gain of the column player. Both dimensions must be at least 2.
class PayoffMatrix {
 public:
  // Bound defaults to the largest absolute entry.
  explicit PayoffMatrix(Matrix entries);
  // Throws ConfigError if any |entry| exceeds `bound`.
  PayoffMatrix(Matrix entries, double bound);

  static PayoffMatrix Zeros(int d1, int d2);

  const Matrix& entries() const { return entries_; }
  double bound() const { return bound_; }
  int rows() const { return static_cast<int>(entries_.rows()); }
  int cols() const { return static_cast<int>(entries_.cols()); }
  double operator()(int i, int j) const { return entries_(i, j); }

 private:
  Matrix entries_;
  double bound_;
};

// A probability vector whose weights are all at least `floor`. A floor of 0
// is the full simplex; floor theta > 0 is the restricted simplex.
class MixedStrategy {
 public:
  // Validates sum == 1 and min >= floor within kSimplexTol; throws DomainError
  // otherwise. Throws EmptySetError when floor > 1/d.
  MixedStrategy(Vector weights, double floor = 0.0);

  // Divides by the sum before validating. Use after arithmetic.
  static MixedStrategy Normalized(Vector weights, double floor = 0.0);
  static MixedStrategy Uniform(int d, double floor = 0.0);
  static MixedStrategy Vertex(int d, int index);

  const Vector& weights() const { return weights_; }
  double floor() const { return floor_; }
  int size() const { return static_cast<int>(weights_.size()); }
  double operator[](int i) const { return weights_[i]; }

  // Same weights, declared against a different floor (revalidated).
  MixedStrategy WithFloor(double floor) const;

 private:
  Vector weights_;
  double floor_;
};

// x' A y. Throws ConfigError on a dimension mismatch.
double Payoff(const PayoffMatrix& a, const MixedStrategy& x,
              const MixedStrategy& y);

// l1 Lipschitz constant of (x, y) -> x' A y, which is the entry bound c.
double LipschitzL1(const PayoffMatrix& a);

// l2 Lipschitz constant sqrt(c) * (sqrt(d1) + sqrt(d2)). Kept in this form on
// purpose; note it is not homogeneous in c, so for c < 1 it exceeds the
// tighter c * (sqrt(d1) + sqrt(d2)).
double LipschitzL2(const PayoffMatrix& a);

// Canonical l1 projection onto the restricted simplex: coordinates below
// theta are raised to theta, and the added mass is taken from the remaining
// coordinates in proportion to their slack above theta. The result is an
// l1-nearest point and is within 2 * theta * (d - 1) of z.
// Throws EmptySetError when theta > 1/d.
MixedStrategy ProjectRestricted(const MixedStrategy& z, double theta);

// Extreme point of the restricted simplex optimizing score . y: theta on
// every coordinate, the rest on the best coordinate (lowest index on ties).
MixedStrategy BestResponseLinear(const Vector& score, double theta,
                                 bool maximize);

// One round of play. `payoff` is x' A y under full information and the
// realized entry A(i, j) under bandit feedback.
struct RoundRecord {
  long t = 0;
  MixedStrategy x;
  MixedStrategy y;
  std::optional<std::pair<int, int>> actions;
  double payoff = 0.0;
};

// l1 distance between two vectors of the same length.
double L1Distance(const Vector& a, const Vector& b);

// Largest admissible floor for a d-dimensional simplex.
inline double MaxFloor(int d) { return 1.0 / static_cast<double>(d); }

}  // namespace omg

#endif  // OMG_GAME_H_
