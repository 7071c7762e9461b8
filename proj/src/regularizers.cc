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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include "omg/errors.h"

namespace omg {

NegEntropy::NegEntropy(int dimension)
    : dimension_(dimension), offset_(std::log(static_cast<double>(dimension))) {
  if (dimension < 2) throw ConfigError("entropy dimension must be >= 2");
}

double NegEntropy::Value(const Vector& x) const {
  if (x.size() != dimension_) throw ConfigError("entropy dimension mismatch");
  double acc = 0.0;
  for (int i = 0; i < dimension_; ++i) {
    if (x[i] > 0.0) acc += x[i] * std::log(x[i]);
  }
  return acc + offset_;
}

Vector NegEntropy::Gradient(const Vector& x) const {
  if (x.size() != dimension_) throw ConfigError("entropy dimension mismatch");
  Vector g(dimension_);
  for (int i = 0; i < dimension_; ++i) {
    if (!(x[i] > 0.0)) {
      throw DomainError("entropy gradient needs strictly positive weights");
    }
    g[i] = 1.0 + std::log(x[i]);
  }
  return g;
}

double NegEntropy::LipschitzBound(double theta) {
  if (!(theta > 0.0)) {
    throw DomainError("entropy is not Lipschitz on the full simplex (theta <= 0)");
  }
  return std::max(std::abs(std::log(theta)), 1.0);
}

namespace {

double LogSumExp(const std::vector<double>& u, int count,
                 const std::vector<int>& order) {
  const double top = u[order[0]];
  double acc = 0.0;
  for (int r = 0; r < count; ++r) acc += std::exp(u[order[r]] - top);
  return top + std::log(acc);
}

}  // namespace

MixedStrategy ClippedSoftmax(const Vector& score, double scale, double theta,
                             bool maximize) {
  const int d = static_cast<int>(score.size());
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainError("clipped softmax needs a finite positive scale");
  }
  if (theta * d > 1.0 + kSimplexTol) {
    throw EmptySetError("clipped softmax: restricted simplex is empty");
  }
  if (theta < 0.0) throw DomainError("clipped softmax: negative floor");
  if (theta * d >= 1.0 - 1e-15) {
    return MixedStrategy(Vector::Constant(d, 1.0 / d), std::min(theta, 1.0 / d));
  }

  std::vector<double> u(d);
  for (int i = 0; i < d; ++i) {
    u[i] = (maximize ? score[i] : -score[i]) / scale;
    if (!std::isfinite(u[i])) {
      std::ostringstream msg;
      msg << "clipped softmax: non-finite score/scale at coordinate " << i
          << " (score " << score[i] << ", scale " << scale << ")";
      throw NumericError(msg.str());
    }
  }
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return u[a] > u[b]; });

  // Keep the top `free` coordinates unclipped; the rest sit at theta. The
  // multiplier mu normalizes the free block to 1 - (d - free) * theta.
  const double log_theta =
      theta > 0.0 ? std::log(theta) : -std::numeric_limits<double>::infinity();
  int free = d;
  double mu = 0.0;
  for (; free >= 1; --free) {
    const double mass = 1.0 - (d - free) * theta;
    mu = LogSumExp(u, free, order) - std::log(mass);
    if (u[order[free - 1]] - mu >= log_theta) break;
  }
  if (free < 1) {
    throw NumericError("clipped softmax: no consistent active set");
  }

  Vector out(d);
  double free_sum = 0.0;
  for (int r = 0; r < d; ++r) {
    const int i = order[r];
    if (r < free) {
      out[i] = std::exp(u[i] - mu);
      free_sum += out[i];
    } else {
      out[i] = theta;
    }
  }
  const double target = 1.0 - (d - free) * theta;
  for (int r = 0; r < free; ++r) {
    const int i = order[r];
    out[i] = std::max(theta, out[i] * (target / free_sum));
  }
  return MixedStrategy(std::move(out), theta);
}

double ClippedSoftmaxKktResidual(const Vector& score, double scale,
                                 double theta, bool maximize,
                                 const Vector& y) {
  const int d = static_cast<int>(score.size());
  double residual = std::abs(y.sum() - 1.0);
  residual = std::max(residual, std::max(0.0, theta - y.minCoeff()));

  // Stationarity in the log domain: u_i - ln y_i equals a common multiplier
  // on free coordinates and is bounded by it on clipped ones. Coordinates
  // below the smallest normal double must be ones whose softmax underflows.
  const double tiny = std::numeric_limits<double>::min();
  const double clip = std::max(theta, tiny);
  std::vector<double> u(d);
  std::vector<char> is_free(d);
  double mult = 0.0;
  int n_free = 0;
  for (int i = 0; i < d; ++i) {
    u[i] = (maximize ? score[i] : -score[i]) / scale;
    is_free[i] = y[i] > clip * (1.0 + 1e-12);
    if (is_free[i]) {
      mult += u[i] - std::log(y[i]);
      ++n_free;
    }
  }
  if (n_free == 0) return residual;
  mult /= n_free;
  for (int i = 0; i < d; ++i) {
    const double viol = is_free[i]
                            ? std::abs(u[i] - std::log(y[i]) - mult)
                            : std::max(0.0, u[i] - std::log(clip) - mult);
    residual = std::max(residual, viol);
  }
  return residual;
}

}  // namespace omg
