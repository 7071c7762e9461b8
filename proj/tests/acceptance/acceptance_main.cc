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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "omg/adversaries.h"
#include "omg/game.h"
#include "omg/harness.h"
#include "omg/learners.h"
#include "omg/rng.h"
#include "omg/saddle.h"

namespace omg {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Stability tallies over every full-information run below.
struct StabilityTally {
  long checks = 0;
  long violations = 0;
  double worst = 0.0;
  void Add(const CellResult& c) {
    checks += c.stability_checks;
    violations += c.stability_violations;
    worst = std::max(worst, c.worst_stability_ratio);
  }
};
StabilityTally g_stability;

// Failed cells of the criterion in progress; any failure fails it.
int g_failed_cells = 0;
std::string g_first_failure;

CellResult Cell(const ExperimentConfig& c, long horizon, std::uint64_t seed) {
  CellResult r = RunCell(c, horizon, seed);
  if (!r.ok) {
    if (g_failed_cells++ == 0) g_first_failure = r.error;
  }
  return r;
}

// Hedge NE regret / T at T = 8192 on the step-change sequence must exceed
// this. Pinned from the first verified run (0.4967), rounded down.
constexpr double kHedgeRegretRateThreshold = 0.45;

ExperimentConfig Config(Algorithm algo, AdversaryKind kind, int d1 = 2,
                        int d2 = 2) {
  ExperimentConfig c;
  c.algorithm = algo;
  c.adversary.kind = kind;
  c.adversary.d1 = d1;
  c.adversary.d2 = d2;
  if (kind == AdversaryKind::kFixed) c.adversary.matrix = MatchingPennies();
  return c;
}

// Ordinary least squares of ln y on ln x; independent of FitSlope so it
// also serves three-point series.
double Slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (size_t k = 0; k < xs.size(); ++k) {
    mx += std::log(xs[k]) / n;
    my += std::log(std::max(ys[k], 1e-12)) / n;
  }
  double sxx = 0, sxy = 0;
  for (size_t k = 0; k < xs.size(); ++k) {
    const double dx = std::log(xs[k]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(std::max(ys[k], 1e-12)) - my);
  }
  return sxy / sxx;
}

std::vector<double> Powers(int lo, int hi) {
  std::vector<double> out;
  for (int k = lo; k <= hi; ++k) out.push_back(std::ldexp(1.0, k));
  return out;
}

std::string Fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

Outcome ComparatorCorrectness() {
  const double mp = ComparatorValue(PayoffMatrix(MatchingPennies()), 0.0);
  AdversarySpec spec;
  spec.kind = AdversaryKind::kTheorem1Scenario1;
  spec.horizon = 1024;
  Matrix sum = Matrix::Zero(2, 2);
  for (long t = 1; t <= spec.horizon; ++t) sum += Emit(spec, t).entries();
  const double s1 = ComparatorValue(PayoffMatrix(sum), 0.0);
  Outcome o;
  o.pass = std::abs(mp) <= 1e-8 && std::abs(s1) <= 1e-8;
  o.detail = "matching pennies " + Fmt("%.3g", mp) + ", step sequence T=1024 " +
             Fmt("%.3g", s1) + " (tol 1e-8)";
  return o;
}

Outcome EstimatorUnbiasedness() {
  std::vector<Matrix> as(3, Matrix(3, 3));
  as[0] << 1, -1, 0.5, -0.2, 0.3, -1, 0.9, 0, -0.7;
  as[1] << 0, 0, 1, 0, 1, 0, 1, 0, 0;
  as[2] << -1, -1, -1, 0.25, 0.5, 0.75, 1, -0.5, 0.1;
  std::vector<Vector> xs(3, Vector(3)), ys(3, Vector(3));
  xs[0] << 0.2, 0.3, 0.5;
  ys[0] << 0.6, 0.25, 0.15;
  xs[1] << 1.0 / 3, 1.0 / 3, 1.0 / 3;
  ys[1] << 0.1, 0.1, 0.8;
  xs[2] << 0.05, 0.9, 0.05;
  ys[2] << 0.4, 0.35, 0.25;
  const int n = 200000;
  double worst = 0.0;
  bool pass = true;
  for (int f = 0; f < 3; ++f) {
    const PayoffMatrix a(as[f], 1.0);
    const MixedStrategy x(xs[f]), y(ys[f]);
    Rng rng(2026, f, Stream::kLearner);
    Matrix sum = Matrix::Zero(3, 3), sq = Matrix::Zero(3, 3);
    for (int s = 0; s < n; ++s) {
      const OnePointEstimate e = SampleOnePointEstimate(a, x, y, rng);
      sum(e.row, e.col) += e.value;
      sq(e.row, e.col) += e.value * e.value;
    }
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double mean = sum(i, j) / n;
        const double var = sq(i, j) / n - mean * mean;
        const double se = std::sqrt(std::max(var, 0.0) / n);
        const double dev = std::abs(mean - a(i, j));
        if (dev > 3.0 * se) pass = false;
        if (se > 0) worst = std::max(worst, dev / se);
      }
    }
  }
  return {pass, "3 fixtures x 9 entries, 2e5 samples, worst deviation " +
                    Fmt("%.2f", worst) + " standard errors (limit 3)"};
}

Outcome ProjectionBound() {
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<int> dim(2, 10);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::exponential_distribution<double> e(1.0);
  int bad = 0;
  for (int k = 0; k < 1000; ++k) {
    const int d = dim(gen);
    const double theta = u(gen) / d;
    Vector w(d);
    for (int i = 0; i < d; ++i) w[i] = e(gen);
    if (k % 4 == 0) w[k % d] = 0.0;
    if (w.sum() == 0.0) w[0] = 1.0;
    const MixedStrategy z = MixedStrategy::Normalized(w);
    const MixedStrategy p = ProjectRestricted(z, theta);
    const bool inside = p.weights().minCoeff() >= theta - kSimplexTol &&
                        std::abs(p.weights().sum() - 1.0) <= kSimplexTol;
    const bool close =
        L1Distance(p.weights(), z.weights()) <= 2.0 * theta * (d - 1);
    if (!inside || !close) ++bad;
  }
  return {bad == 0, "1000 probes, " + std::to_string(bad) + " violations"};
}

Outcome HedgeImpossibility() {
  ExperimentConfig c =
      Config(Algorithm::kHedgeSelfplay, AdversaryKind::kTheorem1Scenario2);
  const std::vector<double> ts = Powers(8, 13);
  std::vector<double> row, col, ne;
  for (double t : ts) {
    const CellResult r = Cell(c, static_cast<long>(t), 0);
    row.push_back(r.regrets.row);
    col.push_back(r.regrets.col);
    ne.push_back(r.ne_regret);
  }
  const double s_row = Slope(ts, row), s_col = Slope(ts, col),
               s_ne = Slope(ts, ne);
  const double rate = ne.back() / ts.back();
  Outcome o;
  o.pass = s_row <= 0.7 && s_col <= 0.7 && s_ne >= 0.9 &&
           rate > kHedgeRegretRateThreshold && kHedgeRegretRateThreshold >= 0.02;
  o.detail = "row slope " + Fmt("%.3f", s_row) + ", col slope " +
             Fmt("%.3f", s_col) + " (<= 0.7; at 8192 row " +
             Fmt("%.3g", row.back()) + ", col " + Fmt("%.3g", col.back()) +
             ", nonpositive clamped to 1e-12); NE slope " + Fmt("%.3f", s_ne) +
             " (>= 0.9); NE/T at 8192 = " + Fmt("%.4f", rate) + " (> " +
             Fmt("%.2f", kHedgeRegretRateThreshold) + ")";
  return o;
}

Outcome OmgSublinearity() {
  const std::vector<double> ts = Powers(8, 14);
  ExperimentConfig step =
      Config(Algorithm::kOmgRftl, AdversaryKind::kTheorem1Scenario2);
  ExperimentConfig rnd =
      Config(Algorithm::kOmgRftl, AdversaryKind::kRandomBounded, 3, 3);
  const int seeds = 8;
  std::vector<double> ne_step, ne_rnd;
  for (double t : ts) {
    const CellResult r = Cell(step, static_cast<long>(t), 0);
    g_stability.Add(r);
    ne_step.push_back(r.ne_regret);
    double mean = 0.0;
    for (int s = 0; s < seeds; ++s) {
      const CellResult q = Cell(rnd, static_cast<long>(t), s);
      g_stability.Add(q);
      mean += q.ne_regret / seeds;
    }
    ne_rnd.push_back(mean);
  }
  const double a = Slope(ts, ne_step), b = Slope(ts, ne_rnd);
  return {a <= 0.8 && b <= 0.8,
          "step sequence slope " + Fmt("%.3f", a) +
              ", random_bounded 3x3 (mean of 8 seeds) slope " + Fmt("%.3f", b) +
              " (<= 0.8), T = 2^8..2^14"};
}

double LastIterateGap(const ExperimentConfig& c, long horizon) {
  const CellResult r = Cell(c, horizon, 0);
  if (!r.ok) return std::numeric_limits<double>::infinity();
  g_stability.Add(r);
  const RegularizedObjective avg(
      PayoffMatrix(r.matrix_sum / static_cast<double>(horizon)), 0.0);
  return DualityGap(avg, *r.final_x, *r.final_y);
}

Outcome LastIterate() {
  const ExperimentConfig mp = Config(Algorithm::kOmgRftl, AdversaryKind::kFixed);
  const double g8 = LastIterateGap(mp, 256), g12 = LastIterateGap(mp, 4096);
  ExperimentConfig skew = mp;
  Matrix m(2, 2);
  m << 1.0, -0.5, -1.0, 0.75;
  skew.adversary.matrix = m;
  const double s8 = LastIterateGap(skew, 256), s12 = LastIterateGap(skew, 4096);
  return {g12 <= g8 / 2.0 && s12 <= s8 / 2.0,
          "matching pennies gap " + Fmt("%.3g", g8) + " -> " + Fmt("%.3g", g12) +
              "; skewed 2x2 gap " + Fmt("%.3g", s8) + " -> " + Fmt("%.3g", s12) +
              " (T = 256 -> 4096, must halve)"};
}

Outcome BanditSublinearity() {
  const std::vector<double> ts = {512, 2048, 8192};
  const int seeds = 20;
  bool pass = true;
  std::ostringstream detail;
  for (AdversaryKind kind :
       {AdversaryKind::kFixed, AdversaryKind::kTheorem1Scenario2}) {
    const ExperimentConfig c = Config(Algorithm::kBanditOmgRftl, kind);
    std::vector<double> mean(ts.size(), 0.0), comp(ts.size(), 0.0),
        restricted(ts.size(), 0.0);
    for (size_t k = 0; k < ts.size(); ++k) {
      for (int s = 0; s < seeds; ++s) {
        const CellResult r = Cell(c, static_cast<long>(ts[k]), s);
        mean[k] += r.ne_regret / seeds;
        comp[k] += r.comparator / seeds;
        restricted[k] += r.comparator_restricted / seeds;
      }
    }
    bool decreasing = true;
    for (size_t k = 1; k < ts.size(); ++k) {
      decreasing = decreasing && mean[k] / ts[k] < mean[k - 1] / ts[k - 1];
    }
    const double slope = Slope(ts, mean);
    pass = pass && decreasing && slope <= 0.95;
    detail << AdversaryName(kind) << ": |NE|/T";
    for (size_t k = 0; k < ts.size(); ++k) {
      detail << " " << Fmt("%.4f", mean[k] / ts[k]);
    }
    detail << (decreasing ? " decreasing" : " NOT decreasing") << ", slope "
           << Fmt("%.3f", slope) << " (<= 0.95), comparators full "
           << Fmt("%.3g", comp.back()) << " restricted "
           << Fmt("%.3g", restricted.back()) << "; ";
  }
  return {pass, detail.str() + "20 seeds"};
}

Outcome DeviationBound() {
  const int runs = 200, horizon = 400, d = 3;
  const double delta = 0.1;
  const double bound = 2.0 * std::sqrt(horizon) * d / (delta * delta);
  AdversarySpec spec;
  spec.kind = AdversaryKind::kRandomBounded;
  spec.d1 = d;
  spec.d2 = d;
  spec.horizon = horizon;
  Vector yfix(3);
  yfix << 0.5, 0.3, 0.2;
  double mean = 0.0;
  for (int run = 0; run < runs; ++run) {
    spec.seed = 1000 + run;
    Rng rng(spec.seed, horizon, Stream::kLearner);
    Vector dev = Vector::Zero(d);
    for (long t = 1; t <= horizon; ++t) {
      const PayoffMatrix a = Emit(spec, t);
      Vector wx(d), wy(d);
      for (int i = 0; i < d; ++i) {
        wx[i] = rng.Uniform();
        wy[i] = rng.Uniform();
      }
      const MixedStrategy x = ProjectRestricted(MixedStrategy::Normalized(wx), delta);
      const MixedStrategy y = ProjectRestricted(MixedStrategy::Normalized(wy), delta);
      const Matrix est = SampleOnePointEstimate(a, x, y, rng).ToMatrix();
      dev += (a.entries() - est) * yfix;
    }
    mean += dev.norm() / runs;
  }
  return {mean <= bound, "mean norm " + Fmt("%.1f", mean) + " over 200 runs (bound " +
                             Fmt("%.0f", bound) + ")"};
}

Outcome SolverCertificates() {
  std::mt19937_64 gen(99);
  std::uniform_int_distribution<int> dim(2, 6);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int bad = 0;
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const int d1 = dim(gen), d2 = dim(gen);
    const double scale = std::pow(10.0, 1 + k % 4);
    Matrix s(d1, d2);
    for (int i = 0; i < d1; ++i) {
      for (int j = 0; j < d2; ++j) s(i, j) = scale * u(gen);
    }
    const double c = k % 2 == 0 ? 0.0 : std::pow(10.0, (k % 5) - 1);
    const int which = (k / 2) % 3;
    const double theta = which == 0   ? 0.0
                         : which == 1 ? std::exp(-2.0)
                                      : 1.0 / (2.0 * std::max(d1, d2));
    const double eps = 1e-8;
    const RegularizedObjective obj(PayoffMatrix(s), c, theta, theta);
    const SaddleCertificate cert = Solve(obj, eps);
    const double gap = DualityGap(obj, cert.x, cert.y);
    worst = std::max(worst, gap);
    if (!(cert.gap <= eps) || !(gap <= eps)) ++bad;
  }
  return {bad == 0, "100 instances, " + std::to_string(bad) +
                        " above eps = 1e-8, worst gap " + Fmt("%.3g", worst)};
}

Outcome Stability() {
  return {g_stability.checks > 0 && g_stability.violations == 0,
          std::to_string(g_stability.checks) + " rounds checked, " +
              std::to_string(g_stability.violations) +
              " violations, worst movement/bound " +
              Fmt("%.3f", g_stability.worst)};
}

}  // namespace
}  // namespace omg

int main() {
  struct Criterion {
    const char* name;
    double limit_s;
    std::function<omg::Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"comparator correctness", 1, omg::ComparatorCorrectness},
      {"estimator unbiasedness", 10, omg::EstimatorUnbiasedness},
      {"projection bound", 1, omg::ProjectionBound},
      {"hedge impossibility", 120, omg::HedgeImpossibility},
      {"omg-rftl sublinearity", 600, omg::OmgSublinearity},
      {"last-iterate convergence", 600, omg::LastIterate},
      {"bandit sublinearity", 1200, omg::BanditSublinearity},
      {"estimator deviation bound", 30, omg::DeviationBound},
      {"solver certificates", 60, omg::SolverCertificates},
      {"iterate stability", 1, omg::Stability},
  };
  int failed = 0;
  int index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    omg::g_failed_cells = 0;
    omg::Outcome o = c.run();
    if (omg::g_failed_cells > 0) {
      o.pass = false;
      o.detail += "; " + std::to_string(omg::g_failed_cells) +
                  " failed cells, first: " + omg::g_first_failure;
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    const bool in_time = secs <= c.limit_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("%s %2d %-26s %s [%.2fs / %.0fs%s]\n", pass ? "PASS" : "FAIL",
                index, c.name, o.detail.c_str(), secs, c.limit_s,
                in_time ? "" : " exceeded");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
