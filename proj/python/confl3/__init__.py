# Copyright 2026 The confl3 Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Three-architecture connected facility location: models, solvers, heuristic."""

from confl3._core import (
    Error,
    ExactResult,
    GeneratorParams,
    HeuristicParams,
    HeuristicResult,
    Instance,
    delta_gap,
    exact,
    export_lp,
    fixing_probabilities,
    generate,
    lp_bound,
    ogap,
    pair_solutions,
    report,
    run,
)

__all__ = [
    "Error",
    "ExactResult",
    "GeneratorParams",
    "HeuristicParams",
    "HeuristicResult",
    "Instance",
    "delta_gap",
    "exact",
    "export_lp",
    "fixing_probabilities",
    "generate",
    "lp_bound",
    "ogap",
    "pair_solutions",
    "report",
    "run",
]
