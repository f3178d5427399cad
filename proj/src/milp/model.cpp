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
#include <cmath>
#include <unordered_set>

#include "confl3/error.hpp"
#include "confl3/milp.hpp"

namespace confl3 {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDuplicateName: return "duplicate-name";
    case ErrorCode::kInvertedBounds: return "inverted-bounds";
    case ErrorCode::kUnknownVariable: return "unknown-variable";
    case ErrorCode::kDuplicateTerm: return "duplicate-term";
    case ErrorCode::kNonFiniteCoefficient: return "non-finite-coefficient";
    case ErrorCode::kOutOfDomain: return "out-of-domain";
    case ErrorCode::kPartialAssignment: return "partial-assignment";
    case ErrorCode::kContractViolation: return "contract-violation";
    case ErrorCode::kInvalidInstance: return "invalid-instance";
    case ErrorCode::kMissingWireless: return "missing-wireless";
    case ErrorCode::kBoundInconsistency: return "bound-inconsistency";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kEmptyCandidates: return "empty-candidates";
    case ErrorCode::kNoCompletableFos: return "no-completable-fos";
    case ErrorCode::kUnattainableCoverage: return "unattainable-coverage";
    case ErrorCode::kInfeasibleRelaxation: return "infeasible-relaxation";
    case ErrorCode::kSchema: return "schema";
    case ErrorCode::kNumerical: return "numerical";
  }
  return "unknown";
}

namespace {

bool IsBinaryValue(double v) { return v == 0.0 || v == 1.0; }

void CheckBounds(const std::string& name, VarKind kind, double lower,
                 double upper) {
  if (std::isnan(lower) || std::isnan(upper) || lower > upper) {
    throw Error(ErrorCode::kInvertedBounds,
                "variable '" + name + "' has inverted bounds");
  }
  if (kind == VarKind::kBinary &&
      (!IsBinaryValue(lower) || !IsBinaryValue(upper))) {
    throw Error(ErrorCode::kOutOfDomain,
                "binary variable '" + name + "' needs bounds in {0,1}");
  }
}

}  // namespace

VarId Model::AddVariable(std::string name, VarKind kind, double lower,
                         double upper) {
  if (name_index_.contains(name)) {
    throw Error(ErrorCode::kDuplicateName,
                "duplicate variable name '" + name + "'");
  }
  CheckBounds(name, kind, lower, upper);
  const VarId id{static_cast<int32_t>(variables_.size())};
  name_index_.emplace(name, id.value);
  variables_.push_back(Variable{std::move(name), kind, lower, upper});
  objective_.push_back(0.0);
  return id;
}

ConstraintId Model::AddConstraint(LinearConstraint constraint) {
  std::unordered_set<int32_t> seen;
  seen.reserve(constraint.terms.size());
  for (const Term& term : constraint.terms) {
    if (!Contains(term.var)) {
      throw Error(ErrorCode::kUnknownVariable,
                  "constraint '" + constraint.tag +
                      "' references unknown variable id " +
                      std::to_string(term.var.value));
    }
    if (!seen.insert(term.var.value).second) {
      throw Error(ErrorCode::kDuplicateTerm,
                  "constraint '" + constraint.tag + "' repeats variable '" +
                      variables_[term.var.value].name + "'");
    }
    if (!std::isfinite(term.coef)) {
      throw Error(ErrorCode::kNonFiniteCoefficient,
                  "constraint '" + constraint.tag +
                      "' has a non-finite coefficient");
    }
  }
  if (!std::isfinite(constraint.rhs)) {
    throw Error(ErrorCode::kNonFiniteCoefficient,
                "constraint '" + constraint.tag + "' has a non-finite rhs");
  }
  const ConstraintId id{static_cast<int32_t>(constraints_.size())};
  constraints_.push_back(std::move(constraint));
  return id;
}

void Model::SetObjectiveCoefficient(VarId var, double cost) {
  if (!Contains(var)) {
    throw Error(ErrorCode::kUnknownVariable,
                "objective references unknown variable id " +
                    std::to_string(var.value));
  }
  if (!std::isfinite(cost)) {
    throw Error(ErrorCode::kNonFiniteCoefficient,
                "objective coefficient of '" + variables_[var.value].name +
                    "' is not finite");
  }
  objective_[var.value] = cost;
}

void Model::SetBounds(VarId var, double lower, double upper) {
  if (!Contains(var)) {
    throw Error(ErrorCode::kUnknownVariable,
                "unknown variable id " + std::to_string(var.value));
  }
  Variable& v = variables_[var.value];
  CheckBounds(v.name, v.kind, lower, upper);
  v.lower = lower;
  v.upper = upper;
}

void Model::SetKind(VarId var, VarKind kind) {
  const Variable& v = variable(var);
  CheckBounds(v.name, kind, v.lower, v.upper);
  variables_[var.value].kind = kind;
}

int Model::num_binaries() const {
  return static_cast<int>(
      std::count_if(variables_.begin(), variables_.end(), [](const auto& v) {
        return v.kind == VarKind::kBinary;
      }));
}

const Variable& Model::variable(VarId var) const {
  if (!Contains(var)) {
    throw Error(ErrorCode::kUnknownVariable,
                "unknown variable id " + std::to_string(var.value));
  }
  return variables_[var.value];
}

const LinearConstraint& Model::constraint(ConstraintId id) const {
  return constraints_.at(id.value);
}

double Model::objective_coefficient(VarId var) const {
  return objective_.at(var.value);
}

VarId Model::Find(std::string_view name) const {
  auto it = name_index_.find(std::string(name));
  return it == name_index_.end() ? VarId{} : VarId{it->second};
}

bool Model::operator==(const Model& other) const {
  return variables_ == other.variables_ &&
         constraints_ == other.constraints_ && objective_ == other.objective_;
}

Assignment::Assignment(int size)
    : values_(size, std::numeric_limits<double>::quiet_NaN()) {}

bool Assignment::IsTotalFor(const Model& model) const {
  if (size() != model.num_variables()) return false;
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

Model LpRelaxation(const Model& model) {
  Model relaxed = model;
  for (int j = 0; j < relaxed.num_variables(); ++j) {
    if (relaxed.variable(VarId{j}).kind == VarKind::kBinary) {
      relaxed.SetKind(VarId{j}, VarKind::kContinuous);
    }
  }
  return relaxed;
}

Model ApplyFixings(const Model& model, const Fixings& fixings) {
  Model fixed = model;
  for (const auto& [var, value] : fixings) {
    const Variable& v = model.variable(var);
    if (!std::isfinite(value) || value < v.lower || value > v.upper) {
      throw Error(ErrorCode::kOutOfDomain,
                  "fixing '" + v.name + "' = " + std::to_string(value) +
                      " lies outside its bounds");
    }
    if (v.kind == VarKind::kBinary && !IsBinaryValue(value)) {
      throw Error(ErrorCode::kOutOfDomain,
                  "binary '" + v.name + "' cannot be fixed to " +
                      std::to_string(value));
    }
    fixed.SetBounds(var, value, value);
  }
  return fixed;
}

double RowActivity(const LinearConstraint& row, const Assignment& assignment) {
  double activity = 0.0;
  for (const Term& t : row.terms) activity += t.coef * assignment[t.var];
  return activity;
}

double RowViolation(const LinearConstraint& row, double activity) {
  switch (row.sense) {
    case Sense::kLessEqual: return std::max(0.0, activity - row.rhs);
    case Sense::kGreaterEqual: return std::max(0.0, row.rhs - activity);
    case Sense::kEqual: return std::abs(activity - row.rhs);
  }
  return 0.0;
}

Evaluation Evaluate(const Model& model, const Assignment& assignment,
                    double tol) {
  if (!assignment.IsTotalFor(model)) {
    throw Error(ErrorCode::kPartialAssignment,
                "assignment does not cover every model variable");
  }
  Evaluation result;
  const auto objective = model.objective();
  for (int j = 0; j < model.num_variables(); ++j) {
    const VarId var{j};
    const double value = assignment[var];
    result.objective += objective[j] * value;
    const Variable& v = model.variable(var);
    const double out = std::max(v.lower - value, value - v.upper);
    if (out > tol) result.bound_violations.push_back({var, out, false});
    if (v.kind == VarKind::kBinary) {
      const double frac = std::abs(value - std::round(value));
      if (frac > kIntegralityTol) {
        result.bound_violations.push_back({var, frac, true});
      }
    }
  }
  for (int i = 0; i < model.num_constraints(); ++i) {
    const LinearConstraint& row = model.constraint(ConstraintId{i});
    const double violation = RowViolation(row, RowActivity(row, assignment));
    if (violation > tol) result.violations.push_back({ConstraintId{i}, violation});
  }
  return result;
}

}  // namespace confl3
