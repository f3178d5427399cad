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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <vector>

#include "confl3/error.hpp"
#include "confl3/solver.hpp"
#include "simplex.hpp"

namespace confl3 {

const char* LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "unknown";
}

const char* MipStatusName(MipStatus status) {
  switch (status) {
    case MipStatus::kOptimal: return "optimal";
    case MipStatus::kFeasible: return "feasible";
    case MipStatus::kInfeasible: return "infeasible";
    case MipStatus::kTimeoutNoIncumbent: return "timeout-no-incumbent";
  }
  return "unknown";
}

LpResult SolveLp(const Model& model, const SimplexOptions& options) {
  for (const Variable& v : model.variables()) {
    if (v.kind == VarKind::kBinary) {
      throw Error(ErrorCode::kContractViolation,
                  "SolveLp received binary variable '" + v.name +
                      "'; relax the model first");
    }
  }
  const internal::LpData data = internal::LpData::FromModel(model);
  const std::vector<double> lower(data.lower.begin(),
                                  data.lower.begin() + data.num_cols);
  const std::vector<double> upper(data.upper.begin(),
                                  data.upper.begin() + data.num_cols);
  internal::SimplexSolution solution =
      internal::RunSimplex(data, lower, upper, options);
  LpResult result;
  result.status = solution.status;
  result.iterations = solution.iterations;
  if (solution.status == LpStatus::kOptimal) {
    result.objective = solution.objective;
    result.assignment = Assignment(std::move(solution.x));
  }
  return result;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Node {
  double bound = -kInfinity;
  int depth = 0;
  int64_t sequence = 0;
  // Bound overrides for binaries, as (variable index, fixed value).
  std::vector<std::pair<int, double>> fixings;
  std::vector<double> x;
  // Parent's final basis on entry, own final basis after evaluation.
  std::vector<uint8_t> basis;
};

// Best bound first; deeper nodes and then older nodes break ties.
struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.sequence > b.sequence;
  }
};

class BranchAndBound {
 public:
  BranchAndBound(const Model& model, const MipOptions& options)
      : model_(model),
        options_(options),
        data_(internal::LpData::FromModel(model)),
        root_lower_(data_.lower.begin(), data_.lower.begin() + data_.num_cols),
        root_upper_(data_.upper.begin(), data_.upper.begin() + data_.num_cols) {
    for (int j = 0; j < model.num_variables(); ++j) {
      if (model.variable(VarId{j}).kind == VarKind::kBinary) binaries_.push_back(j);
    }
  }

  MipResult Run();

 private:
  // Solves the relaxation of a node; returns false when infeasible.
  bool Evaluate(Node& node) {
    std::vector<double> lower = root_lower_;
    std::vector<double> upper = root_upper_;
    for (const auto& [j, v] : node.fixings) {
      lower[j] = v;
      upper[j] = v;
    }
    internal::SimplexSolution sol =
        internal::RunSimplex(data_, lower, upper, options_.lp, node.basis);
    if (sol.status == LpStatus::kUnbounded) {
      throw Error(ErrorCode::kContractViolation,
                  "MILP relaxation is unbounded");
    }
    if (sol.status != LpStatus::kOptimal) return false;
    node.bound = sol.objective;
    node.x = std::move(sol.x);
    node.basis = std::move(sol.basis);
    return true;
  }

  // Variable index with fractional part closest to 0.5, or -1 if integral.
  int SelectBranchVariable(const std::vector<double>& x) const {
    int best = -1;
    double best_score = kInfinity;
    for (int j : binaries_) {
      const double frac = x[j] - std::floor(x[j]);
      if (frac <= kIntegralityTol || frac >= 1.0 - kIntegralityTol) continue;
      const double score = std::abs(frac - 0.5);
      if (score < best_score) {
        best_score = score;
        best = j;
      }
    }
    return best;
  }

  // Rounds the binaries and re-solves the continuous part so incumbents
  // carry exact 0/1 values.
  void TryIncumbent(const Node& node) {
    std::vector<double> lower = root_lower_;
    std::vector<double> upper = root_upper_;
    for (int j : binaries_) {
      const double v = std::round(node.x[j]);
      lower[j] = v;
      upper[j] = v;
    }
    internal::SimplexSolution sol =
        internal::RunSimplex(data_, lower, upper, options_.lp, node.basis);
    std::vector<double> x;
    double objective;
    if (sol.status == LpStatus::kOptimal) {
      x = std::move(sol.x);
      objective = sol.objective;
    } else {
      x = node.x;
      for (int j : binaries_) x[j] = std::round(x[j]);
      objective = 0.0;
      for (int j = 0; j < data_.num_cols; ++j) objective += data_.cost[j] * x[j];
    }
    Assignment candidate(std::move(x));
    if (!confl3::Evaluate(model_, candidate, kFeasibilityTol).feasible()) return;
    if (objective < incumbent_value_) {
      incumbent_value_ = objective;
      incumbent_ = std::move(candidate);
    }
  }

  bool Prunable(double bound) const {
    const double threshold =
        incumbent_value_ -
        options_.relative_gap * std::max(1.0, std::abs(incumbent_value_));
    if (bound >= threshold) return true;
    return options_.cutoff.has_value() && bound > *options_.cutoff;
  }

  const Model& model_;
  MipOptions options_;
  internal::LpData data_;
  std::vector<double> root_lower_;
  std::vector<double> root_upper_;
  std::vector<int> binaries_;
  std::optional<Assignment> incumbent_;
  double incumbent_value_ = kInfinity;
};

MipResult BranchAndBound::Run() {
  const auto start = Clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(Clock::now() - start).count();
  };

  MipResult result;
  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  int64_t sequence = 0;
  int64_t nodes = 0;
  double reported_bound = -kInfinity;

  auto process = [&](Node node) {
    ++nodes;
    if (!Evaluate(node)) return;
    if (Prunable(node.bound)) return;
    if (SelectBranchVariable(node.x) < 0) {
      TryIncumbent(node);
      return;
    }
    node.sequence = sequence++;
    open.push(std::move(node));
  };

  process(Node{});
  bool stopped = false;
  while (!open.empty()) {
    reported_bound = std::max(reported_bound,
                              std::min(open.top().bound, incumbent_value_));
    if (elapsed() >= options_.time_limit ||
        (options_.node_limit >= 0 && nodes >= options_.node_limit)) {
      stopped = true;
      break;
    }
    Node node = open.top();
    open.pop();
    if (Prunable(node.bound)) continue;
    const int var = SelectBranchVariable(node.x);
    for (double value : {0.0, 1.0}) {
      Node child;
      child.depth = node.depth + 1;
      child.fixings = node.fixings;
      child.fixings.emplace_back(var, value);
      child.basis = node.basis;
      process(std::move(child));
    }
  }

  result.nodes = nodes;
  result.elapsed = elapsed();
  if (incumbent_.has_value()) {
    result.incumbent = incumbent_;
    result.objective = incumbent_value_;
  }
  if (stopped) {
    result.status = incumbent_.has_value() ? MipStatus::kFeasible
                                           : MipStatus::kTimeoutNoIncumbent;
    result.lower_bound = reported_bound;
  } else {
    result.status = incumbent_.has_value() ? MipStatus::kOptimal
                                           : MipStatus::kInfeasible;
    result.lower_bound = incumbent_.has_value() ? incumbent_value_ : kInfinity;
  }
  return result;
}

class BundledBackend final : public SolverBackend {
 public:
  explicit BundledBackend(SimplexOptions lp) : lp_(lp) {}
  std::string name() const override { return "bundled"; }
  LpResult SolveLp(const Model& model) override {
    return confl3::SolveLp(model, lp_);
  }
  MipResult SolveMip(const Model& model, const MipOptions& options) override {
    MipOptions copy = options;
    copy.lp = lp_;
    return confl3::SolveMip(model, copy);
  }

 private:
  SimplexOptions lp_;
};

}  // namespace

MipResult SolveMip(const Model& model, const MipOptions& options) {
  if (!(options.time_limit > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "time limit must be positive");
  }
  BranchAndBound solver(model, options);
  return solver.Run();
}

std::unique_ptr<SolverBackend> MakeBundledBackend(SimplexOptions lp) {
  return std::make_unique<BundledBackend>(lp);
}

}  // namespace confl3
