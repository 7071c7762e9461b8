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

#include "omg/metrics.h"

#include <algorithm>
#include <cmath>

#include "omg/errors.h"

namespace omg {

void CompensatedMatrix::Add(const Matrix& m) {
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    double& s = sum_.data()[k];
    double& c = comp_.data()[k];
    const double v = m.data()[k];
    const double t = s + v;
    if (std::abs(s) >= std::abs(v)) {
      c += (s - t) + v;
    } else {
      c += (v - t) + s;
    }
    s = t;
  }
}

RunLedger::RunLedger(int d1, int d2)
    : d1_(d1),
      d2_(d2),
      matrix_sum_(d1, d2),
      row_losses_(d1, 1),
      col_gains_(d2, 1) {}

const RoundSummary& RunLedger::Record(
    const PayoffMatrix& a, const MixedStrategy& x, const MixedStrategy& y,
    std::optional<std::pair<int, int>> actions) {
  if (a.rows() != d1_ || a.cols() != d2_) {
    throw ConfigError("ledger: payoff matrix shape mismatch");
  }
  const Vector ay = a.entries() * y.weights();
  const Vector atx = a.entries().transpose() * x.weights();
  const double mixed = x.weights().dot(ay);
  const double realized = actions ? a(actions->first, actions->second) : mixed;

  realized_.Add(realized);
  mixed_.Add(mixed);
  matrix_sum_.Add(a.entries());
  row_losses_.Add(ay);
  col_gains_.Add(atx);

  const long t = rounds() + 1;
  records_.push_back(RoundRecord{t, x, y, actions, realized});

  const Vector losses = row_losses();
  const Vector gains = col_gains();
  const double cum_mixed = mixed_.Value();
  RoundSummary s;
  s.t = t;
  s.payoff = realized;
  s.cum_payoff = realized_.Value();
  s.row_regret = cum_mixed - losses.minCoeff();
  s.col_regret = gains.maxCoeff() - cum_mixed;
  s.gap = gains.maxCoeff() - losses.minCoeff();
  summaries_.push_back(s);
  return summaries_.back();
}

double NeRegret(const RunLedger& ledger, double eps) {
  const double comparator =
      ComparatorValue(PayoffMatrix(ledger.matrix_sum()), 0.0, eps);
  return std::abs(ledger.cumulative_payoff() - comparator);
}

double NeRegretMixed(const RunLedger& ledger, double eps) {
  const double comparator =
      ComparatorValue(PayoffMatrix(ledger.matrix_sum()), 0.0, eps);
  return std::abs(ledger.cumulative_mixed_payoff() - comparator);
}

IndividualRegrets ComputeIndividualRegrets(const RunLedger& ledger) {
  const double cum = ledger.cumulative_mixed_payoff();
  return IndividualRegrets{cum - ledger.row_losses().minCoeff(),
                           ledger.col_gains().maxCoeff() - cum};
}

double EmpiricalDualityGap(const RunLedger& ledger) {
  return ledger.col_gains().maxCoeff() - ledger.row_losses().minCoeff();
}

SlopeFit FitSlope(std::span<const std::pair<double, double>> points) {
  if (points.size() < 4) {
    throw ConfigError("slope fit needs at least 4 points, got " +
                      std::to_string(points.size()));
  }
  const double n = static_cast<double>(points.size());
  double sx = 0.0;
  double sy = 0.0;
  for (const auto& [t, r] : points) {
    if (!(t > 0.0)) throw ConfigError("slope fit: horizon must be positive");
    sx += std::log(t);
    sy += std::log(std::max(r, 1e-12));
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& [t, r] : points) {
    const double dx = std::log(t) - mx;
    const double dy = std::log(std::max(r, 1e-12)) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw ConfigError("slope fit: all horizons are equal");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

}  // namespace omg
