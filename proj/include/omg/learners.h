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

#ifndef OMG_LEARNERS_H_
#define OMG_LEARNERS_H_

#include <optional>
#include <string>
#include <utility>

#include "omg/game.h"
#include "omg/rng.h"
#include "omg/saddle.h"

namespace omg {

enum class Schedule { kExplicit, kTheorem3, kTheorem5 };

const char* ScheduleName(Schedule s);
Schedule ParseSchedule(const std::string& name);

// Step size eta and simplex floor (theta in full information, delta under
// bandit feedback). `warning` is non-empty when a schedule had to clamp the
// floor to keep the restricted simplex nonempty.
struct LearnerParams {
  double eta = 1.0;
  double floor = 0.0;
  long horizon = 0;
  Schedule schedule = Schedule::kExplicit;
  std::string warning;

  static LearnerParams Explicit(double eta, double floor, long horizon = 0);

  // eta = sqrt(T) / G, theta = exp(-eta G). theta is clamped to
  // min(1/d1, 1/d2) / 2 when exp(-eta G) exceeds min(1/d1, 1/d2).
  static LearnerParams Theorem3(long horizon, int d1, int d2,
                                double lipschitz = 1.0);

  // delta = T^(-1/6), eta = T^(1/6). delta is clamped to min(1/d1, 1/d2) / 2
  // when T^(-1/6) >= min(1/d1, 1/d2).
  static LearnerParams Theorem5(long horizon, int d1, int d2);

  // Throws ConfigError unless eta > 0 and 0 <= floor <= min(1/d1, 1/d2).
  void Validate(int d1, int d2) const;
};

// Single-owner state of one learner. `x`, `y` is the pair to be played in the
// next round; it is fixed before that round's matrix is revealed.
struct LearnerState {
  long round = 0;
  Matrix matrix_sum;
  MixedStrategy x;
  MixedStrategy y;
  // Bandit learners: actions sampled from (x, y) for the next round.
  std::optional<std::pair<int, int>> actions;

  static LearnerState Initial(int d1, int d2, double floor);
};

struct StepInfo {
  // ||x_t - x_{t+1}||_1 + ||y_t - y_{t+1}||_1.
  double movement = 0.0;
  // Tolerance requested from the inner solver, and the gap it certified.
  double eps = 0.0;
  double gap = 0.0;
  long iterations = 0;
};

// Inner-solve tolerance for round t: 1e-6 / t^2, floored at 1e-12 times the
// magnitude of the objective so the target stays above double rounding.
double InnerSolveTolerance(long t, const Matrix& matrix_sum, double reg_scale,
                           int d1, int d2);

// Follow-the-regularized-leader saddle step: S += A_t, then the next pair is
// the saddle of x' S y + (t / eta)(R_X(x) - R_Y(y)) over the floored
// simplexes, warm-started from the current pair. With entropy regularizers
// this is the full-information online matrix game learner.
StepInfo SpRftlStep(LearnerState& state, const LearnerParams& params,
                    const PayoffMatrix& a_t);

// Upper bound on the movement reported by SpRftlStep at round t:
// (4 eta / t)(G + max(G_RX, G_RY) / eta) plus the slack allowed by inexact
// inner solves, 2 sqrt(eps_t / (t / eta)) + 2 sqrt(eps_{t-1} / ((t-1) / eta)).
double MovementBound(long t, const LearnerParams& params, double lipschitz,
                     double eps_t, double eps_prev);

// Single-entry unbiased estimate of a payoff matrix.
struct OnePointEstimate {
  int row = 0;
  int col = 0;
  double value = 0.0;
  int d1 = 0;
  int d2 = 0;

  Matrix ToMatrix() const;
};

// Samples i ~ x and j ~ y and scales A_ij by 1 / (x_i y_j).
OnePointEstimate SampleOnePointEstimate(const PayoffMatrix& a,
                                        const MixedStrategy& x,
                                        const MixedStrategy& y, Rng& rng);

// The same estimate when only the observed entry is available.
OnePointEstimate EstimateFromObservation(int row, int col, double observed,
                                         const MixedStrategy& x,
                                         const MixedStrategy& y);

// Draws the actions for the next round from the state's current pair.
void SampleActions(LearnerState& state, Rng& rng);

// Bandit-feedback step. `observed` must be entry state.actions of the true
// matrix of this round. Accumulates the one-point estimate, advances like
// SpRftlStep over the delta-floored simplexes, and samples new actions.
StepInfo BanditStep(LearnerState& state, const LearnerParams& params,
                    double observed, Rng& rng);

// Multiplicative weights: w_i proportional to w_i exp(-eta loss_i) when
// minimizing, exp(+eta loss_i) when maximizing. Computed in the log domain.
MixedStrategy HedgeStep(const MixedStrategy& weights, const Vector& loss,
                        double eta, bool minimize);

// Fixed-horizon rate sqrt(8 ln d / T).
double HedgeDefaultRate(int d, long horizon);

}  // namespace omg

#endif  // OMG_LEARNERS_H_
