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

#ifndef OMG_REGULARIZERS_H_
#define OMG_REGULARIZERS_H_

#include "omg/game.h"

namespace omg {

// Shifted negative entropy R(x) = sum_i x_i ln x_i + ln d. Nonnegative on the
// simplex, zero at the uniform point, ln d at a vertex.
class NegEntropy {
 public:
  explicit NegEntropy(int dimension);

  int dimension() const { return dimension_; }
  double offset() const { return offset_; }

  // Uses 0 ln 0 = 0.
  double Value(const Vector& x) const;
  double Value(const MixedStrategy& x) const { return Value(x.weights()); }

  // (1 + ln x_i)_i. Throws DomainError on a nonpositive coordinate.
  Vector Gradient(const Vector& x) const;
  Vector Gradient(const MixedStrategy& x) const { return Gradient(x.weights()); }

  // Sup-norm bound on the gradient over the theta-restricted simplex,
  // max(|ln theta|, 1). Throws DomainError for theta <= 0.
  static double LipschitzBound(double theta);

 private:
  int dimension_;
  double offset_;
};

// Exact optimizer over the theta-restricted simplex of
//   score . y - scale * R(y)   (maximize = true), or
//   score . x + scale * R(x)   (maximize = false, minimized).
// The solution is a softmax of +-score/scale with the coordinates that would
// fall under theta clipped to theta. The clipped set is found by scanning
// breakpoints in sorted order, so the result satisfies the KKT conditions to
// rounding error. Throws NumericError on non-finite input.
MixedStrategy ClippedSoftmax(const Vector& score, double scale, double theta,
                             bool maximize);

// Largest KKT violation of `y` as an optimizer of the ClippedSoftmax problem.
// Exposed for tests.
double ClippedSoftmaxKktResidual(const Vector& score, double scale,
                                 double theta, bool maximize,
                                 const Vector& y);

}  // namespace omg

#endif  // OMG_REGULARIZERS_H_
