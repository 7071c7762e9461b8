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

#ifndef OMG_METRICS_H_
#define OMG_METRICS_H_

#include <cmath>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "omg/game.h"
#include "omg/saddle.h"

namespace omg {

// Neumaier compensated summation.
class CompensatedSum {
 public:
  void Add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double Value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Elementwise Neumaier summation of equally shaped matrices.
class CompensatedMatrix {
 public:
  CompensatedMatrix(int rows, int cols)
      : sum_(Matrix::Zero(rows, cols)), comp_(Matrix::Zero(rows, cols)) {}
  void Add(const Matrix& m);
  Matrix Value() const { return sum_ + comp_; }

 private:
  Matrix sum_;
  Matrix comp_;
};

// Per-round quantities after round t, over rounds 1..t.
struct RoundSummary {
  long t = 0;
  double payoff = 0.0;
  double cum_payoff = 0.0;
  double row_regret = 0.0;
  double col_regret = 0.0;
  double gap = 0.0;
};

// Accumulates a run. The realized payoff of a round is x' A y, or A(i, j)
// when actions are given (bandit runs); the mixed payoff x' A y is tracked in
// both cases and drives the individual regrets.
class RunLedger {
 public:
  RunLedger(int d1, int d2);

  // Returns the summary row for this round.
  const RoundSummary& Record(const PayoffMatrix& a, const MixedStrategy& x,
                             const MixedStrategy& y,
                             std::optional<std::pair<int, int>> actions = {});

  int d1() const { return d1_; }
  int d2() const { return d2_; }
  long rounds() const { return static_cast<long>(summaries_.size()); }
  double cumulative_payoff() const { return realized_.Value(); }
  double cumulative_mixed_payoff() const { return mixed_.Value(); }
  // sum_t A_t.
  Matrix matrix_sum() const { return matrix_sum_.Value(); }
  // sum_t A_t y_t and sum_t A_t' x_t.
  Vector row_losses() const { return row_losses_.Value(); }
  Vector col_gains() const { return col_gains_.Value(); }

  const std::vector<RoundRecord>& records() const { return records_; }
  const std::vector<RoundSummary>& summaries() const { return summaries_; }

 private:
  int d1_;
  int d2_;
  CompensatedSum realized_;
  CompensatedSum mixed_;
  CompensatedMatrix matrix_sum_;
  CompensatedMatrix row_losses_;
  CompensatedMatrix col_gains_;
  std::vector<RoundRecord> records_;
  std::vector<RoundSummary> summaries_;
};

// |sum_t payoff_t - min_x max_y sum_t x' A_t y| with the comparator certified
// to eps. Uses realized payoffs (entries, for bandit runs).
double NeRegret(const RunLedger& ledger, double eps = kComparatorEps);

// Same with x_t' A_t y_t in place of realized payoffs.
double NeRegretMixed(const RunLedger& ledger, double eps = kComparatorEps);

struct IndividualRegrets {
  double row = 0.0;
  double col = 0.0;
};

// row = sum x_t'A_t y_t - min_i (sum A_t y_t)_i,
// col = max_j (sum A_t' x_t)_j - sum x_t'A_t y_t.
IndividualRegrets ComputeIndividualRegrets(const RunLedger& ledger);

// Duality gap of the empirical play, max_j (sum A_t' x_t)_j -
// min_i (sum A_t y_t)_i; equals row + col regret.
double EmpiricalDualityGap(const RunLedger& ledger);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

// Least squares of ln(regret) on ln(T). Regrets are clamped below at 1e-12.
// Throws ConfigError with fewer than 4 points or a nonpositive T.
SlopeFit FitSlope(std::span<const std::pair<double, double>> points);

}  // namespace omg

#endif  // OMG_METRICS_H_
