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

#include "omg/learners.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "omg/errors.h"
#include "omg/regularizers.h"

namespace omg {
namespace {

constexpr double kSolverRelativeFloor = 1e-12;

StepInfo AdvanceAndSolve(LearnerState& state, const LearnerParams& params) {
  const int d1 = static_cast<int>(state.matrix_sum.rows());
  const int d2 = static_cast<int>(state.matrix_sum.cols());
  state.round += 1;
  const double reg_scale = static_cast<double>(state.round) / params.eta;
  const double eps =
      InnerSolveTolerance(state.round, state.matrix_sum, reg_scale, d1, d2);
  RegularizedObjective obj(PayoffMatrix(state.matrix_sum), reg_scale,
                           params.floor, params.floor);
  SolveOptions options;
  options.warm_start = std::make_pair(state.x, state.y);
  try {
    SaddleCertificate cert = Solve(obj, eps, options);
    StepInfo info;
    info.movement = L1Distance(state.x.weights(), cert.x.weights()) +
                    L1Distance(state.y.weights(), cert.y.weights());
    info.eps = eps;
    info.gap = cert.gap;
    info.iterations = cert.iterations;
    state.x = std::move(cert.x);
    state.y = std::move(cert.y);
    return info;
  } catch (const NumericError& e) {
    std::ostringstream msg;
    msg << "round " << state.round << ": " << e.what();
    throw NumericError(msg.str(), e.best_gap());
  }
}

}  // namespace

const char* ScheduleName(Schedule s) {
  switch (s) {
    case Schedule::kExplicit:
      return "explicit";
    case Schedule::kTheorem3:
      return "theorem3";
    case Schedule::kTheorem5:
      return "theorem5";
  }
  return "?";
}

Schedule ParseSchedule(const std::string& name) {
  if (name == "explicit") return Schedule::kExplicit;
  if (name == "theorem3") return Schedule::kTheorem3;
  if (name == "theorem5") return Schedule::kTheorem5;
  throw ConfigError("unknown schedule '" + name +
                    "' (expected explicit, theorem3 or theorem5)");
}

LearnerParams LearnerParams::Explicit(double eta, double floor, long horizon) {
  LearnerParams p;
  p.eta = eta;
  p.floor = floor;
  p.horizon = horizon;
  p.schedule = Schedule::kExplicit;
  return p;
}

LearnerParams LearnerParams::Theorem3(long horizon, int d1, int d2,
                                      double lipschitz) {
  if (horizon < 1) throw ConfigError("theorem3 schedule needs horizon >= 1");
  if (!(lipschitz > 0.0)) {
    throw ConfigError("theorem3 schedule needs a positive Lipschitz constant");
  }
  LearnerParams p;
  p.schedule = Schedule::kTheorem3;
  p.horizon = horizon;
  p.eta = std::sqrt(static_cast<double>(horizon)) / lipschitz;
  p.floor = std::exp(-p.eta * lipschitz);
  const double cap = std::min(MaxFloor(d1), MaxFloor(d2));
  if (p.floor > cap) {
    std::ostringstream msg;
    msg << "theorem3: exp(-eta G) = " << p.floor << " exceeds min(1/d1, 1/d2) = "
        << cap << "; clamping theta to " << cap / 2;
    p.warning = msg.str();
    p.floor = cap / 2;
  }
  return p;
}

LearnerParams LearnerParams::Theorem5(long horizon, int d1, int d2) {
  if (horizon < 1) throw ConfigError("theorem5 schedule needs horizon >= 1");
  LearnerParams p;
  p.schedule = Schedule::kTheorem5;
  p.horizon = horizon;
  const double root6 = std::pow(static_cast<double>(horizon), 1.0 / 6.0);
  p.eta = root6;
  p.floor = 1.0 / root6;
  const double cap = std::min(MaxFloor(d1), MaxFloor(d2));
  if (p.floor >= cap) {
    std::ostringstream msg;
    msg << "theorem5: delta = " << p.floor << " is not below min(1/d1, 1/d2) = "
        << cap << "; clamping delta to " << cap / 2;
    p.warning = msg.str();
    p.floor = cap / 2;
  }
  return p;
}

void LearnerParams::Validate(int d1, int d2) const {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw ConfigError("eta must be finite and positive");
  }
  const double cap = std::min(MaxFloor(d1), MaxFloor(d2));
  if (!(floor >= 0.0) || floor > cap) {
    std::ostringstream msg;
    msg << "floor " << floor << " outside [0, min(1/d1, 1/d2) = " << cap << "]";
    throw ConfigError(msg.str());
  }
}

LearnerState LearnerState::Initial(int d1, int d2, double floor) {
  return LearnerState{0, Matrix::Zero(d1, d2), MixedStrategy::Uniform(d1, floor),
                      MixedStrategy::Uniform(d2, floor), std::nullopt};
}

double InnerSolveTolerance(long t, const Matrix& matrix_sum, double reg_scale,
                           int d1, int d2) {
  const double td = static_cast<double>(t);
  const double magnitude =
      1.0 + matrix_sum.cwiseAbs().maxCoeff() +
      reg_scale * std::log(static_cast<double>(std::max(d1, d2)));
  return std::max(1e-6 / (td * td), kSolverRelativeFloor * magnitude);
}

StepInfo SpRftlStep(LearnerState& state, const LearnerParams& params,
                    const PayoffMatrix& a_t) {
  if (a_t.rows() != state.matrix_sum.rows() ||
      a_t.cols() != state.matrix_sum.cols()) {
    throw ConfigError("payoff matrix shape does not match learner state");
  }
  state.matrix_sum += a_t.entries();
  return AdvanceAndSolve(state, params);
}

double MovementBound(long t, const LearnerParams& params, double lipschitz,
                     double eps_t, double eps_prev) {
  const double td = static_cast<double>(t);
  const double reg_lipschitz = params.floor > 0.0
                                   ? NegEntropy::LipschitzBound(params.floor)
                                   : std::numeric_limits<double>::infinity();
  double bound = 4.0 * params.eta / td * (lipschitz + reg_lipschitz / params.eta);
  bound += 2.0 * std::sqrt(eps_t * params.eta / td);
  if (t > 1) bound += 2.0 * std::sqrt(eps_prev * params.eta / (td - 1.0));
  return bound;
}

Matrix OnePointEstimate::ToMatrix() const {
  Matrix m = Matrix::Zero(d1, d2);
  m(row, col) = value;
  return m;
}

OnePointEstimate EstimateFromObservation(int row, int col, double observed,
                                         const MixedStrategy& x,
                                         const MixedStrategy& y) {
  const double p = x[row] * y[col];
  if (!(p > 0.0)) {
    throw DomainError("one-point estimate needs strictly positive strategies");
  }
  return OnePointEstimate{row, col, observed / p, x.size(), y.size()};
}

OnePointEstimate SampleOnePointEstimate(const PayoffMatrix& a,
                                        const MixedStrategy& x,
                                        const MixedStrategy& y, Rng& rng) {
  if (x.size() != a.rows() || y.size() != a.cols()) {
    throw ConfigError("one-point estimate: dimension mismatch");
  }
  const int i = rng.Categorical(x.weights());
  const int j = rng.Categorical(y.weights());
  return EstimateFromObservation(i, j, a(i, j), x, y);
}

void SampleActions(LearnerState& state, Rng& rng) {
  const int i = rng.Categorical(state.x.weights());
  const int j = rng.Categorical(state.y.weights());
  state.actions = std::make_pair(i, j);
}

StepInfo BanditStep(LearnerState& state, const LearnerParams& params,
                    double observed, Rng& rng) {
  if (!state.actions) {
    throw ConfigError("bandit step called before actions were sampled");
  }
  const auto [i, j] = *state.actions;
  const OnePointEstimate est =
      EstimateFromObservation(i, j, observed, state.x, state.y);
  state.matrix_sum(est.row, est.col) += est.value;
  StepInfo info = AdvanceAndSolve(state, params);
  SampleActions(state, rng);
  return info;
}

MixedStrategy HedgeStep(const MixedStrategy& weights, const Vector& loss,
                        double eta, bool minimize) {
  const int d = weights.size();
  if (loss.size() != d) throw ConfigError("hedge: loss dimension mismatch");
  if (!loss.allFinite()) throw DomainError("hedge: non-finite loss");
  const double sign = minimize ? -1.0 : 1.0;
  Vector logits(d);
  for (int i = 0; i < d; ++i) {
    logits[i] = weights[i] > 0.0
                    ? std::log(weights[i]) + sign * eta * loss[i]
                    : -std::numeric_limits<double>::infinity();
  }
  const double top = logits.maxCoeff();
  Vector w(d);
  for (int i = 0; i < d; ++i) w[i] = std::exp(logits[i] - top);
  return MixedStrategy::Normalized(std::move(w), 0.0);
}

double HedgeDefaultRate(int d, long horizon) {
  return std::sqrt(8.0 * std::log(static_cast<double>(d)) /
                   static_cast<double>(horizon));
}

}  // namespace omg
