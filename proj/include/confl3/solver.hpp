// Copyright 2026 The confl3 Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Bundled reference solvers: a bounded primal revised simplex for LPs and a
// best-bound branch-and-bound for MILPs with binary variables.

#ifndef CONFL3_SOLVER_HPP_
#define CONFL3_SOLVER_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "confl3/milp.hpp"

namespace confl3 {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };
enum class MipStatus { kOptimal, kFeasible, kInfeasible, kTimeoutNoIncumbent };

const char* LpStatusName(LpStatus status);
const char* MipStatusName(MipStatus status);

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  Assignment assignment;
  int64_t iterations = 0;
};

struct SimplexOptions {
  double primal_tol = 1e-9;
  double dual_tol = 1e-9;
  double pivot_tol = 1e-9;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int64_t degenerate_limit = 1000;
  int refactor_interval = 64;
  // 0 selects an automatic cap proportional to the model size.
  int64_t iteration_limit = 0;
};

struct MipOptions {
  double time_limit = kInfinity;  // seconds
  int64_t node_limit = -1;        // < 0 means unlimited
  // Relative gap at which a node is pruned against the incumbent.
  double relative_gap = 1e-9;
  // Rows that only accept solutions strictly better than this value are
  // added by callers; the solver itself only uses it to prune.
  std::optional<double> cutoff;
  SimplexOptions lp;
};

struct MipResult {
  MipStatus status = MipStatus::kTimeoutNoIncumbent;
  std::optional<Assignment> incumbent;
  double objective = kInfinity;
  double lower_bound = -kInfinity;
  double elapsed = 0.0;
  int64_t nodes = 0;
  bool has_incumbent() const { return incumbent.has_value(); }
};

// Solves a model whose variables are all continuous. Throws
// Error(kContractViolation) when binaries are present.
LpResult SolveLp(const Model& model, const SimplexOptions& options = {});

MipResult SolveMip(const Model& model, const MipOptions& options = {});

// Anything honouring the SolveLp/SolveMip contracts can stand in for the
// bundled solvers.
class SolverBackend {
 public:
  virtual ~SolverBackend() = default;
  virtual std::string name() const = 0;
  virtual LpResult SolveLp(const Model& model) = 0;
  virtual MipResult SolveMip(const Model& model, const MipOptions& options) = 0;
};

std::unique_ptr<SolverBackend> MakeBundledBackend(SimplexOptions lp = {});

}  // namespace confl3

#endif  // CONFL3_SOLVER_HPP_
