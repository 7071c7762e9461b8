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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "omg/adversaries.h"
#include "omg/errors.h"
#include "omg/game.h"
#include "omg/harness.h"
#include "omg/learners.h"
#include "omg/metrics.h"
#include "omg/regularizers.h"
#include "omg/rng.h"
#include "omg/saddle.h"

namespace py = pybind11;

namespace omg {
namespace {

py::dict StepDict(const StepInfo& s) {
  py::dict d;
  d["movement"] = s.movement;
  d["eps"] = s.eps;
  d["gap"] = s.gap;
  d["iterations"] = s.iterations;
  return d;
}

py::dict ParamsDict(const LearnerParams& p) {
  py::dict d;
  d["eta"] = p.eta;
  d["floor"] = p.floor;
  d["horizon"] = p.horizon;
  d["schedule"] = ScheduleName(p.schedule);
  d["warning"] = p.warning;
  return d;
}

py::dict CellDict(const CellResult& c) {
  py::dict d;
  d["T"] = c.horizon;
  d["seed"] = c.seed;
  d["ok"] = c.ok;
  d["error"] = c.error;
  d["warning"] = c.warning;
  d["ne_regret"] = c.ne_regret;
  d["ne_regret_mixed"] = c.ne_regret_mixed;
  d["comparator"] = c.comparator;
  d["comparator_restricted"] = c.comparator_restricted;
  d["row_regret"] = c.regrets.row;
  d["col_regret"] = c.regrets.col;
  d["cum_payoff"] = c.cum_payoff;
  d["eta"] = c.eta;
  d["floor"] = c.floor;
  d["stability_violations"] = c.stability_violations;
  if (c.final_x) d["final_x"] = c.final_x->weights();
  if (c.final_y) d["final_y"] = c.final_y->weights();
  std::vector<double> payoff, cum, gap;
  for (const RoundSummary& r : c.rounds) {
    payoff.push_back(r.payoff);
    cum.push_back(r.cum_payoff);
    gap.push_back(r.gap);
  }
  d["payoff"] = payoff;
  d["cum_payoff_by_round"] = cum;
  d["gap_by_round"] = gap;
  return d;
}

// Full-information learner with its own state, one round at a time.
class PySpRftl {
 public:
  PySpRftl(int d1, int d2, double eta, double floor)
      : params_(LearnerParams::Explicit(eta, floor)),
        state_(LearnerState::Initial(d1, d2, floor)) {
    params_.Validate(d1, d2);
  }
  py::dict Step(const Matrix& a) {
    return StepDict(SpRftlStep(state_, params_, PayoffMatrix(a)));
  }
  Vector x() const { return state_.x.weights(); }
  Vector y() const { return state_.y.weights(); }
  long round() const { return state_.round; }

 private:
  LearnerParams params_;
  LearnerState state_;
};

}  // namespace
}  // namespace omg

PYBIND11_MODULE(_omg, m) {
  using namespace omg;
  m.doc() = "Online matrix game learners and saddle-point solver";
  m.attr("__version__") = kToolVersion;

  static py::exception<ConfigError> config_error(m, "ConfigError",
                                                 PyExc_ValueError);
  static py::exception<DomainError> domain_error(m, "DomainError",
                                                 PyExc_ValueError);
  static py::exception<NumericError> numeric_error(m, "NumericError",
                                                   PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConfigError& e) {
      config_error(e.what());
    } catch (const NumericError& e) {
      numeric_error(e.what());
    } catch (const DomainError& e) {
      domain_error(e.what());
    }
  });

  m.def(
      "comparator_value",
      [](const Matrix& s, double theta, double eps) {
        return ComparatorValue(PayoffMatrix(s), theta, eps);
      },
      py::arg("matrix_sum"), py::arg("theta") = 0.0,
      py::arg("eps") = kComparatorEps,
      "min_x max_y x' S y over theta-floored simplexes.");

  m.def(
      "solve_saddle",
      [](const Matrix& s, double reg_scale, double floor_x, double floor_y,
         double eps) {
        const RegularizedObjective obj(PayoffMatrix(s), reg_scale, floor_x,
                                       floor_y);
        const SaddleCertificate c = Solve(obj, eps);
        py::dict d;
        d["x"] = c.x.weights();
        d["y"] = c.y.weights();
        d["value"] = c.value;
        d["gap"] = c.gap;
        d["iterations"] = c.iterations;
        return d;
      },
      py::arg("matrix_sum"), py::arg("reg_scale"), py::arg("floor_x") = 0.0,
      py::arg("floor_y") = 0.0, py::arg("eps") = kComparatorEps);

  m.def(
      "duality_gap",
      [](const Matrix& s, double reg_scale, const Vector& x, const Vector& y,
         double floor_x, double floor_y) {
        const RegularizedObjective obj(PayoffMatrix(s), reg_scale, floor_x,
                                       floor_y);
        return DualityGap(obj, MixedStrategy(x), MixedStrategy(y));
      },
      py::arg("matrix_sum"), py::arg("reg_scale"), py::arg("x"), py::arg("y"),
      py::arg("floor_x") = 0.0, py::arg("floor_y") = 0.0);

  m.def(
      "project_restricted",
      [](const Vector& z, double theta) {
        return ProjectRestricted(MixedStrategy(z), theta).weights();
      },
      py::arg("z"), py::arg("theta"));

  m.def(
      "clipped_softmax",
      [](const Vector& score, double scale, double theta, bool maximize) {
        return ClippedSoftmax(score, scale, theta, maximize).weights();
      },
      py::arg("score"), py::arg("scale"), py::arg("theta") = 0.0,
      py::arg("maximize") = true);

  m.def(
      "neg_entropy",
      [](const Vector& x) { return NegEntropy(static_cast<int>(x.size())).Value(x); },
      py::arg("x"));

  m.def(
      "one_point_estimate",
      [](const Matrix& a, const Vector& x, const Vector& y, std::uint64_t seed,
         std::uint64_t run_index) {
        Rng rng(seed, run_index);
        return SampleOnePointEstimate(PayoffMatrix(a), MixedStrategy(x),
                                      MixedStrategy(y), rng)
            .ToMatrix();
      },
      py::arg("a"), py::arg("x"), py::arg("y"), py::arg("seed") = 0,
      py::arg("run_index") = 0);

  m.def(
      "hedge_step",
      [](const Vector& w, const Vector& loss, double eta, bool minimize) {
        return HedgeStep(MixedStrategy(w), loss, eta, minimize).weights();
      },
      py::arg("weights"), py::arg("loss"), py::arg("eta"),
      py::arg("minimize") = true);

  m.def(
      "learner_params",
      [](const std::string& schedule, long horizon, int d1, int d2) {
        switch (ParseSchedule(schedule)) {
          case Schedule::kTheorem3:
            return ParamsDict(LearnerParams::Theorem3(horizon, d1, d2));
          case Schedule::kTheorem5:
            return ParamsDict(LearnerParams::Theorem5(horizon, d1, d2));
          case Schedule::kExplicit:
            break;
        }
        throw ConfigError("explicit parameters need eta and floor");
      },
      py::arg("schedule"), py::arg("horizon"), py::arg("d1"), py::arg("d2"));

  m.def(
      "emit",
      [](const std::string& kind, long t, long horizon, int d1, int d2,
         double bound, std::uint64_t seed) {
        AdversarySpec spec;
        spec.kind = ParseAdversaryKind(kind);
        spec.horizon = horizon;
        spec.d1 = d1;
        spec.d2 = d2;
        spec.bound = bound;
        spec.seed = seed;
        spec.Validate();
        return Emit(spec, t).entries();
      },
      py::arg("kind"), py::arg("t"), py::arg("horizon"), py::arg("d1") = 2,
      py::arg("d2") = 2, py::arg("bound") = 1.0, py::arg("seed") = 0,
      "Matrix of round t from a non-adaptive adversary.");

  m.def(
      "fit_slope",
      [](const std::vector<std::pair<double, double>>& points) {
        const SlopeFit f = FitSlope(points);
        py::dict d;
        d["slope"] = f.slope;
        d["intercept"] = f.intercept;
        d["r2"] = f.r2;
        return d;
      },
      py::arg("points"));

  py::class_<PySpRftl>(m, "SpRftl")
      .def(py::init<int, int, double, double>(), py::arg("d1"), py::arg("d2"),
           py::arg("eta"), py::arg("floor"))
      .def("step", &PySpRftl::Step, py::arg("a"))
      .def_property_readonly("x", &PySpRftl::x)
      .def_property_readonly("y", &PySpRftl::y)
      .def_property_readonly("round", &PySpRftl::round);

  m.def(
      "validate_config",
      [](const std::string& text) { ParseConfig(text, "<python>"); },
      py::arg("text"));

  m.def(
      "run_cell",
      [](const std::string& text, long horizon, std::uint64_t seed) {
        const ExperimentConfig config = ParseConfig(text, "<python>");
        CellResult c;
        {
          py::gil_scoped_release release;
          c = RunCell(config, horizon, seed);
        }
        return CellDict(c);
      },
      py::arg("config_text"), py::arg("horizon"), py::arg("seed"));

  m.def(
      "run",
      [](const std::string& text, const std::filesystem::path& out_dir,
         int jobs) {
        const ExperimentConfig config = ParseConfig(text, "<python>");
        RunOptions options;
        options.out_dir = out_dir;
        options.jobs = jobs;
        py::gil_scoped_release release;
        return Run(config, options).failed_cells;
      },
      py::arg("config_text"), py::arg("out_dir"), py::arg("jobs") = 1,
      "Runs every cell and writes results; returns the failed cell count.");

  m.def(
      "replay_check",
      [](const std::string& text, const std::filesystem::path& recorded) {
        const ExperimentConfig config = ParseConfig(text, "<python>");
        py::gil_scoped_release release;
        const ReplayReport r = ReplayCheck(config, recorded);
        return std::make_pair(r.pass, r.detail);
      },
      py::arg("config_text"), py::arg("recorded_dir"));
}
