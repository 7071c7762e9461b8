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

#ifndef OMG_SADDLE_H_
#define OMG_SADDLE_H_

#include <optional>
#include <utility>

#include "omg/game.h"
#include "omg/regularizers.h"

namespace omg {

// Default certified tolerance for comparators and offline oracles.
inline constexpr double kComparatorEps = 1e-8;

// F(x, y) = x' S y + c * (R_X(x) - R_Y(y)) over Delta_{floor_x} x Delta_{floor_y}.
// Convex in x, concave in y, strongly so when c > 0. With c = 0 it is the
// plain bilinear matrix game.
class RegularizedObjective {
 public:
  RegularizedObjective(PayoffMatrix matrix_sum, double reg_scale,
                       double floor_x = 0.0, double floor_y = 0.0);

  const PayoffMatrix& matrix() const { return matrix_; }
  double reg_scale() const { return reg_scale_; }
  double floor_x() const { return floor_x_; }
  double floor_y() const { return floor_y_; }
  const NegEntropy& reg_x() const { return reg_x_; }
  const NegEntropy& reg_y() const { return reg_y_; }
  int rows() const { return matrix_.rows(); }
  int cols() const { return matrix_.cols(); }

  double Value(const MixedStrategy& x, const MixedStrategy& y) const;

 private:
  PayoffMatrix matrix_;
  double reg_scale_;
  double floor_x_;
  double floor_y_;
  NegEntropy reg_x_;
  NegEntropy reg_y_;
};

struct SaddleCertificate {
  MixedStrategy x;
  MixedStrategy y;
  double value;
  double gap;
  long iterations;
};

struct SolveOptions {
  std::optional<std::pair<MixedStrategy, MixedStrategy>> warm_start;
  long max_iterations = 1'000'000;
  int check_every = 25;
};

// max_{y'} F(x, y') - min_{x'} F(x', y), both inner problems solved in
// closed form. Throws DomainError if x or y violate the objective's floors.
double DualityGap(const RegularizedObjective& obj, const MixedStrategy& x,
                  const MixedStrategy& y);

// Returns a strategy pair whose duality gap is at most eps.
//
// c > 0: extragradient with entropy-Bregman steps. The entropy term is kept
// inside the prox step, so each half-step is one ClippedSoftmax call per
// player and the iteration contracts linearly at a rate set by
// max|S| / c. The step is 1 / (2 max|S|), halved if the gap stops improving.
//
// c = 0: the game is a linear program over the two simplexes. Small games
// are solved exactly by scanning square kernels of the vertex-payoff matrix
// (smallest support first, lexicographic within a size) and keeping the
// first pair whose certified gap is within eps; games with too many kernels
// fall back to extragradient on averaged iterates.
//
// Throws NumericError carrying the best gap when max_iterations is reached.
SaddleCertificate Solve(const RegularizedObjective& obj, double eps,
                        const SolveOptions& options = {});

// min_x max_y x' S y over Delta_theta x Delta_theta, certified to eps.
double ComparatorValue(const PayoffMatrix& matrix_sum, double theta,
                       double eps = kComparatorEps);

}  // namespace omg

#endif  // OMG_SADDLE_H_
