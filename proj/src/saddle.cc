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

#include "omg/saddle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

#include "omg/errors.h"

namespace omg {
namespace {

constexpr double kKernelBudget = 250000.0;

void CheckFeasible(const MixedStrategy& s, int d, double floor,
                   const char* who) {
  if (s.size() != d) {
    std::ostringstream msg;
    msg << who << " has dimension " << s.size() << ", expected " << d;
    throw DomainError(msg.str());
  }
  if (s.weights().minCoeff() < floor - kSimplexTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << who << " violates floor " << floor << " (min weight "
        << s.weights().minCoeff() << ")";
    throw DomainError(msg.str());
  }
}

// Coerces a caller-supplied pair onto the objective's restricted simplexes.
MixedStrategy Admissible(const MixedStrategy& s, int d, double floor) {
  if (s.size() != d) return MixedStrategy::Uniform(d, floor);
  if (s.weights().minCoeff() >= floor) return s.WithFloor(floor);
  return ProjectRestricted(MixedStrategy(s.weights(), 0.0), floor);
}

Vector SafeLog(const Vector& w) {
  Vector out(w.size());
  for (int i = 0; i < w.size(); ++i) {
    out[i] = std::log(std::max(w[i], std::numeric_limits<double>::denorm_min()));
  }
  return out;
}

double Choose(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

bool NextCombination(std::vector<int>& idx, int n) {
  const int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Payoff at every pair of vertices of the two restricted simplexes. The
// restricted game is the full-simplex game on this matrix under
// x = floor_x + (1 - d1 floor_x) * x_tilde.
Matrix VertexPayoffs(const RegularizedObjective& obj) {
  const Matrix& s = obj.matrix().entries();
  const int d1 = obj.rows();
  const int d2 = obj.cols();
  const double tx = obj.floor_x();
  const double ty = obj.floor_y();
  const double sx = 1.0 - d1 * tx;
  const double sy = 1.0 - d2 * ty;
  const Vector row_sums = s.rowwise().sum();
  const Eigen::RowVectorXd col_sums = s.colwise().sum();
  const double total = s.sum();
  Matrix m = sx * sy * s;
  m.colwise() += sx * ty * row_sums;
  m.rowwise() += tx * sy * col_sums;
  m.array() += tx * ty * total;
  return m;
}

MixedStrategy Lift(const Vector& tilde, int d, double floor) {
  const double s = 1.0 - d * floor;
  Vector w = Vector::Constant(d, floor) + s * tilde;
  return MixedStrategy::Normalized(std::move(w), floor);
}

// Solves [M_IJ -1; 1' 0] [w; v] = [0; 1] for the equalizing weights on the
// chosen support. Returns false if singular or infeasible.
bool EqualizerOnSupport(const Matrix& m_sub, Vector& weights) {
  const int k = static_cast<int>(m_sub.rows());
  Matrix b(k + 1, k + 1);
  b.topLeftCorner(k, k) = m_sub;
  b.topRightCorner(k, 1).setConstant(-1.0);
  b.bottomLeftCorner(1, k).setOnes();
  b(k, k) = 0.0;
  Eigen::FullPivLU<Matrix> lu(b);
  if (!lu.isInvertible()) return false;
  Vector rhs = Vector::Zero(k + 1);
  rhs[k] = 1.0;
  const Vector sol = lu.solve(rhs);
  if (!sol.allFinite()) return false;
  weights = sol.head(k);
  const double scale = std::max(1.0, weights.cwiseAbs().maxCoeff());
  if (weights.minCoeff() < -1e-10 * scale) return false;
  weights = weights.cwiseMax(0.0);
  const double sum = weights.sum();
  if (!(sum > 0.0)) return false;
  weights /= sum;
  return true;
}

std::optional<SaddleCertificate> SolveBilinearByKernels(
    const RegularizedObjective& obj, double eps) {
  const int d1 = obj.rows();
  const int d2 = obj.cols();
  double kernels = 0.0;
  for (int k = 1; k <= std::min(d1, d2); ++k) {
    kernels += Choose(d1, k) * Choose(d2, k);
  }
  if (kernels > kKernelBudget) return std::nullopt;

  const Matrix m = VertexPayoffs(obj);
  long examined = 0;
  for (int k = 1; k <= std::min(d1, d2); ++k) {
    std::vector<int> rows(k);
    for (int i = 0; i < k; ++i) rows[i] = i;
    do {
      std::vector<int> cols(k);
      for (int j = 0; j < k; ++j) cols[j] = j;
      do {
        ++examined;
        Matrix sub(k, k);
        for (int a = 0; a < k; ++a) {
          for (int b = 0; b < k; ++b) sub(a, b) = m(rows[a], cols[b]);
        }
        Vector yk;
        Vector xk;
        if (!EqualizerOnSupport(sub, yk)) continue;
        if (!EqualizerOnSupport(sub.transpose(), xk)) continue;
        Vector xt = Vector::Zero(d1);
        Vector yt = Vector::Zero(d2);
        for (int a = 0; a < k; ++a) xt[rows[a]] = xk[a];
        for (int b = 0; b < k; ++b) yt[cols[b]] = yk[b];
        MixedStrategy x = Lift(xt, d1, obj.floor_x());
        MixedStrategy y = Lift(yt, d2, obj.floor_y());
        const double gap = DualityGap(obj, x, y);
        if (gap <= eps) {
          const double value = obj.Value(x, y);
          return SaddleCertificate{std::move(x), std::move(y), value, gap,
                                   examined};
        }
      } while (NextCombination(cols, d2));
    } while (NextCombination(rows, d1));
  }
  return std::nullopt;
}

// One entropy-Bregman prox step for each player from (x, y) along the
// gradients evaluated at (gx_at, gy_at).
struct ProxStep {
  const RegularizedObjective& obj;
  double step;

  MixedStrategy Row(const Vector& log_x, const Vector& grad) const {
    const double c = obj.reg_scale();
    return ClippedSoftmax(step * grad - log_x, 1.0 + step * c, obj.floor_x(),
                          /*maximize=*/false);
  }
  MixedStrategy Col(const Vector& log_y, const Vector& grad) const {
    const double c = obj.reg_scale();
    return ClippedSoftmax(step * grad + log_y, 1.0 + step * c, obj.floor_y(),
                          /*maximize=*/true);
  }
};

// Newton's method on the KKT system of the c > 0 problem with the clipped
// coordinates held at the floor, in log coordinates for the free ones. The
// active sets are re-estimated from the result a few times. Returns nothing
// if the iteration breaks down; callers certify whatever it returns.
std::optional<std::pair<MixedStrategy, MixedStrategy>> NewtonPolish(
    const RegularizedObjective& obj, const MixedStrategy& x0,
    const MixedStrategy& y0) {
  const Matrix& s = obj.matrix().entries();
  const double c = obj.reg_scale();
  const int d1 = obj.rows();
  const int d2 = obj.cols();
  const double tx = obj.floor_x();
  const double ty = obj.floor_y();
  // Without a floor, coordinates below `kUnderflow` are held at exactly zero.
  constexpr double kUnderflow = 1e-250;
  const double ex = std::max(tx, kUnderflow);
  const double ey = std::max(ty, kUnderflow);

  Vector x = x0.weights();
  Vector y = y0.weights();
  std::vector<char> free_x(d1), free_y(d2);
  for (int i = 0; i < d1; ++i) free_x[i] = x[i] > ex * (1 + 1e-9);
  for (int j = 0; j < d2; ++j) free_y[j] = y[j] > ey * (1 + 1e-9);

  for (int outer = 0; outer < 8; ++outer) {
    std::vector<int> fx, fy;
    for (int i = 0; i < d1; ++i) {
      if (free_x[i]) fx.push_back(i);
      else x[i] = tx;
    }
    for (int j = 0; j < d2; ++j) {
      if (free_y[j]) fy.push_back(j);
      else y[j] = ty;
    }
    const int nx = static_cast<int>(fx.size());
    const int ny = static_cast<int>(fy.size());
    const int hx = nx > 0 ? 1 : 0;
    const int hy = ny > 0 ? 1 : 0;
    const int n = nx + ny + hx + hy;
    const double mass_x = 1.0 - tx * (d1 - nx);
    const double mass_y = 1.0 - ty * (d2 - ny);

    // z = (ln x_F, ln y_F, lambda, mu).
    Vector z(n);
    for (int k = 0; k < nx; ++k) z[k] = std::log(x[fx[k]]);
    for (int k = 0; k < ny; ++k) z[nx + k] = std::log(y[fy[k]]);
    {
      const Vector gx = s * y;
      const Vector gy = s.transpose() * x;
      double lam = 0.0, mu = 0.0;
      for (int k = 0; k < nx; ++k) lam += gx[fx[k]] + c * (1 + z[k]);
      for (int k = 0; k < ny; ++k) mu += gy[fy[k]] - c * (1 + z[nx + k]);
      if (hx) z[nx + ny] = lam / nx;
      if (hy) z[nx + ny + hx] = mu / ny;
    }

    auto unpack = [&](const Vector& v, Vector& xv, Vector& yv) {
      for (int k = 0; k < nx; ++k) xv[fx[k]] = std::exp(v[k]);
      for (int k = 0; k < ny; ++k) yv[fy[k]] = std::exp(v[nx + k]);
    };
    auto residual = [&](const Vector& v) {
      Vector xv = x, yv = y;
      unpack(v, xv, yv);
      const Vector gx = s * yv;
      const Vector gy = s.transpose() * xv;
      Vector r(n);
      for (int k = 0; k < nx; ++k) r[k] = gx[fx[k]] + c * (1 + v[k]) - v[nx + ny];
      for (int k = 0; k < ny; ++k) {
        r[nx + k] = gy[fy[k]] - c * (1 + v[nx + k]) - v[nx + ny + hx];
      }
      if (hx) {
        double m = 0.0;
        for (int k = 0; k < nx; ++k) m += xv[fx[k]];
        r[nx + ny] = (m - mass_x) * (1.0 + c);
      }
      if (hy) {
        double m = 0.0;
        for (int k = 0; k < ny; ++k) m += yv[fy[k]];
        r[nx + ny + hx] = (m - mass_y) * (1.0 + c);
      }
      return r;
    };

    Vector r = residual(z);
    for (int it = 0; it < 200 && n > 0; ++it) {
      Vector xv = x, yv = y;
      unpack(z, xv, yv);
      Matrix jac = Matrix::Zero(n, n);
      for (int k = 0; k < nx; ++k) {
        jac(k, k) = c;
        for (int l = 0; l < ny; ++l) jac(k, nx + l) = s(fx[k], fy[l]) * yv[fy[l]];
        jac(k, nx + ny) = -1.0;
      }
      for (int l = 0; l < ny; ++l) {
        for (int k = 0; k < nx; ++k) jac(nx + l, k) = s(fx[k], fy[l]) * xv[fx[k]];
        jac(nx + l, nx + l) = -c;
        jac(nx + l, nx + ny + hx) = -1.0;
      }
      if (hx) {
        for (int k = 0; k < nx; ++k) jac(nx + ny, k) = xv[fx[k]] * (1.0 + c);
      }
      if (hy) {
        for (int l = 0; l < ny; ++l) {
          jac(nx + ny + hx, nx + l) = yv[fy[l]] * (1.0 + c);
        }
      }
      const Vector delta = jac.fullPivLu().solve(-r);
      if (!delta.allFinite()) return std::nullopt;
      double big = 0.0;
      for (int k = 0; k < nx + ny; ++k) big = std::max(big, std::abs(delta[k]));
      double alpha = big > 20.0 ? 20.0 / big : 1.0;
      const double r0 = r.norm();
      bool moved = false;
      for (int half = 0; half < 40; ++half, alpha *= 0.5) {
        const Vector cand = z + alpha * delta;
        const Vector rc = residual(cand);
        if (rc.allFinite() && rc.norm() < r0 * (1.0 - 1e-4 * alpha)) {
          z = cand;
          r = rc;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    unpack(z, x, y);

    // Re-estimate the active sets.
    bool changed = false;
    const Vector gx = s * y;
    const Vector gy = s.transpose() * x;
    const double lam = hx ? z[nx + ny] : 0.0;
    const double mu = hy ? z[nx + ny + hx] : 0.0;
    {
      for (int i = 0; i < d1; ++i) {
        if (free_x[i] && x[i] < ex) {
          free_x[i] = false;
          changed = true;
        } else if (!free_x[i] && hx &&
                   gx[i] + c * (1 + std::log(ex)) - lam < 0.0) {
          free_x[i] = true;
          changed = true;
        } else if (!free_x[i] && !hx) {
          free_x[i] = true;
          changed = true;
        }
      }
    }
    {
      for (int j = 0; j < d2; ++j) {
        if (free_y[j] && y[j] < ey) {
          free_y[j] = false;
          changed = true;
        } else if (!free_y[j] && hy &&
                   gy[j] - c * (1 + std::log(ey)) - mu > 0.0) {
          free_y[j] = true;
          changed = true;
        } else if (!free_y[j] && !hy) {
          free_y[j] = true;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }

  auto finish = [](Vector w, double floor, int d) -> std::optional<MixedStrategy> {
    if (!w.allFinite()) return std::nullopt;
    w = w.cwiseMax(floor);
    if (floor * d >= 1.0 - 1e-15) return MixedStrategy::Uniform(d, floor);
    // Rescale the part above the floor to the remaining mass.
    const Vector excess = w.array() - floor;
    const double total = excess.sum();
    if (!(total > 0.0)) return std::nullopt;
    const Vector out =
        Vector::Constant(d, floor) + excess * ((1.0 - floor * d) / total);
    return MixedStrategy(out, floor);
  };
  auto fx = finish(x, tx, d1);
  auto fy = finish(y, ty, d2);
  if (!fx || !fy) return std::nullopt;
  return std::make_pair(std::move(*fx), std::move(*fy));
}

SaddleCertificate Extragradient(const RegularizedObjective& obj, double eps,
                                const SolveOptions& options) {
  const Matrix& s = obj.matrix().entries();
  const int d1 = obj.rows();
  const int d2 = obj.cols();
  const bool averaged = obj.reg_scale() == 0.0;

  MixedStrategy x = MixedStrategy::Uniform(d1, obj.floor_x());
  MixedStrategy y = MixedStrategy::Uniform(d2, obj.floor_y());
  if (options.warm_start) {
    x = Admissible(options.warm_start->first, d1, obj.floor_x());
    y = Admissible(options.warm_start->second, d2, obj.floor_y());
  }

  const double lipschitz = s.cwiseAbs().maxCoeff();
  if (lipschitz == 0.0) {
    // Pure entropy (or constant-zero) game: best responses to anything.
    MixedStrategy bx = obj.reg_scale() > 0.0
                           ? ClippedSoftmax(Vector::Zero(d1), obj.reg_scale(),
                                            obj.floor_x(), false)
                           : x;
    MixedStrategy by = obj.reg_scale() > 0.0
                           ? ClippedSoftmax(Vector::Zero(d2), obj.reg_scale(),
                                            obj.floor_y(), true)
                           : y;
    const double gap = DualityGap(obj, bx, by);
    const double value = obj.Value(bx, by);
    return SaddleCertificate{std::move(bx), std::move(by), value, gap, 0};
  }

  double step = 1.0 / (2.0 * lipschitz);
  ProxStep prox{obj, step};

  Vector sum_x = Vector::Zero(d1);
  Vector sum_y = Vector::Zero(d2);
  double weight_sum = 0.0;

  MixedStrategy best_x = x;
  MixedStrategy best_y = y;
  double best_gap = DualityGap(obj, x, y);
  if (best_gap <= eps) {
    const double value = obj.Value(x, y);
    return SaddleCertificate{x, y, value, best_gap, 0};
  }
  int stalled_checks = 0;

  // c > 0: Newton polishing at geometrically spaced checks, starting now.
  long next_polish = 0;
  auto polish = [&](long it) -> bool {
    if (averaged || it < next_polish) return false;
    next_polish = std::max<long>(2 * it, options.check_every);
    try {
      auto p = NewtonPolish(obj, best_x, best_y);
      if (!p) return false;
      const double gap = DualityGap(obj, p->first, p->second);
      if (!(gap < best_gap)) return false;
      best_gap = gap;
      best_x = std::move(p->first);
      best_y = std::move(p->second);
      x = best_x;
      y = best_y;
      return best_gap <= eps;
    } catch (const std::exception&) {
      return false;
    }
  };
  if (polish(0)) {
    const double value = obj.Value(best_x, best_y);
    return SaddleCertificate{best_x, best_y, value, best_gap, 0};
  }

  for (long it = 1; it <= options.max_iterations; ++it) {
    const Vector log_x = SafeLog(x.weights());
    const Vector log_y = SafeLog(y.weights());
    const MixedStrategy xh = prox.Row(log_x, s * y.weights());
    const MixedStrategy yh = prox.Col(log_y, s.transpose() * x.weights());
    x = prox.Row(log_x, s * yh.weights());
    y = prox.Col(log_y, s.transpose() * xh.weights());

    if (averaged) {
      sum_x += xh.weights();
      sum_y += yh.weights();
      weight_sum += 1.0;
    }
    if (it % options.check_every != 0) continue;

    MixedStrategy cx = averaged
                           ? MixedStrategy::Normalized(sum_x / weight_sum,
                                                       obj.floor_x())
                           : x;
    MixedStrategy cy = averaged
                           ? MixedStrategy::Normalized(sum_y / weight_sum,
                                                       obj.floor_y())
                           : y;
    const double gap = DualityGap(obj, cx, cy);
    if (gap < best_gap) {
      stalled_checks = gap < 0.999 * best_gap ? 0 : stalled_checks + 1;
      best_gap = gap;
      best_x = cx;
      best_y = cy;
    } else {
      ++stalled_checks;
    }
    if (best_gap <= eps) {
      const double value = obj.Value(best_x, best_y);
      return SaddleCertificate{std::move(best_x), std::move(best_y), value,
                               best_gap, it};
    }
    if (polish(it)) {
      const double value = obj.Value(best_x, best_y);
      return SaddleCertificate{std::move(best_x), std::move(best_y), value,
                               best_gap, it};
    }
    if (!averaged && stalled_checks >= 4) {
      // Restart from the best point with a shorter step.
      stalled_checks = 0;
      step *= 0.5;
      prox.step = step;
      x = best_x;
      y = best_y;
    }
  }
  std::ostringstream msg;
  msg.precision(6);
  msg << "saddle solver hit the iteration cap (" << options.max_iterations
      << ") with gap " << best_gap << " > eps " << eps;
  throw NumericError(msg.str(), best_gap);
}

}  // namespace

RegularizedObjective::RegularizedObjective(PayoffMatrix matrix_sum,
                                           double reg_scale, double floor_x,
                                           double floor_y)
    : matrix_(std::move(matrix_sum)),
      reg_scale_(reg_scale),
      floor_x_(floor_x),
      floor_y_(floor_y),
      reg_x_(matrix_.rows()),
      reg_y_(matrix_.cols()) {
  if (!(reg_scale_ >= 0.0) || !std::isfinite(reg_scale_)) {
    throw ConfigError("regularization scale must be finite and nonnegative");
  }
  if (floor_x_ < 0.0 || floor_y_ < 0.0) {
    throw DomainError("negative strategy floor");
  }
  if (floor_x_ * rows() > 1.0 + kSimplexTol ||
      floor_y_ * cols() > 1.0 + kSimplexTol) {
    throw EmptySetError("objective floor exceeds 1/d");
  }
}

double RegularizedObjective::Value(const MixedStrategy& x,
                                   const MixedStrategy& y) const {
  double v = Payoff(matrix_, x, y);
  if (reg_scale_ > 0.0) v += reg_scale_ * (reg_x_.Value(x) - reg_y_.Value(y));
  return v;
}

double DualityGap(const RegularizedObjective& obj, const MixedStrategy& x,
                  const MixedStrategy& y) {
  CheckFeasible(x, obj.rows(), obj.floor_x(), "row strategy");
  CheckFeasible(y, obj.cols(), obj.floor_y(), "column strategy");
  const Matrix& s = obj.matrix().entries();
  const double c = obj.reg_scale();
  const Vector gx = s * y.weights();
  const Vector gy = s.transpose() * x.weights();

  double col_gain;
  double row_gain;
  if (c > 0.0) {
    const MixedStrategy by = ClippedSoftmax(gy, c, obj.floor_y(), true);
    const MixedStrategy bx = ClippedSoftmax(gx, c, obj.floor_x(), false);
    col_gain = gy.dot(by.weights() - y.weights()) -
               c * (obj.reg_y().Value(by) - obj.reg_y().Value(y));
    row_gain = gx.dot(x.weights() - bx.weights()) +
               c * (obj.reg_x().Value(x) - obj.reg_x().Value(bx));
  } else {
    const MixedStrategy by = BestResponseLinear(gy, obj.floor_y(), true);
    const MixedStrategy bx = BestResponseLinear(gx, obj.floor_x(), false);
    col_gain = gy.dot(by.weights() - y.weights());
    row_gain = gx.dot(x.weights() - bx.weights());
  }
  return std::max(0.0, col_gain) + std::max(0.0, row_gain);
}

SaddleCertificate Solve(const RegularizedObjective& obj, double eps,
                        const SolveOptions& options) {
  if (!(eps > 0.0)) throw ConfigError("solver tolerance must be positive");
  if (options.check_every < 1) throw ConfigError("check_every must be >= 1");
  if (obj.reg_scale() == 0.0) {
    if (auto cert = SolveBilinearByKernels(obj, eps)) return *std::move(cert);
  }
  return Extragradient(obj, eps, options);
}

double ComparatorValue(const PayoffMatrix& matrix_sum, double theta,
                       double eps) {
  RegularizedObjective obj(matrix_sum, 0.0, theta, theta);
  return Solve(obj, eps).value;
}

}  // namespace omg
