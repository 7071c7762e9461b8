# Copyright 2026 The OMG-RFTL Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Online matrix game learners, saddle-point solver and experiment harness."""

from ._omg import (
    ConfigError,
    DomainError,
    NumericError,
    SpRftl,
    __version__,
    clipped_softmax,
    comparator_value,
    duality_gap,
    emit,
    fit_slope,
    hedge_step,
    learner_params,
    neg_entropy,
    one_point_estimate,
    project_restricted,
    replay_check,
    run,
    run_cell,
    solve_saddle,
    validate_config,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "NumericError",
    "SpRftl",
    "__version__",
    "clipped_softmax",
    "comparator_value",
    "duality_gap",
    "emit",
    "fit_slope",
    "hedge_step",
    "learner_params",
    "neg_entropy",
    "one_point_estimate",
    "project_restricted",
    "replay_check",
    "run",
    "run_cell",
    "solve_saddle",
    "validate_config",
]
