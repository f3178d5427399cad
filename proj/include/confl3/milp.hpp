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

// Solver-agnostic MILP representation: binary and continuous variables,
// linear rows, and a minimization objective. Insertion order is the
// canonical ordering of variables and constraints everywhere.

#ifndef CONFL3_MILP_HPP_
#define CONFL3_MILP_HPP_

#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace confl3 {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr double kFeasibilityTol = 1e-6;
inline constexpr double kIntegralityTol = 1e-6;

struct VarId {
  int32_t value = -1;
  auto operator<=>(const VarId&) const = default;
};

struct ConstraintId {
  int32_t value = -1;
  auto operator<=>(const ConstraintId&) const = default;
};

enum class VarKind { kBinary, kContinuous };
enum class Sense { kLessEqual, kEqual, kGreaterEqual };

struct Variable {
  std::string name;
  VarKind kind = VarKind::kContinuous;
  double lower = 0.0;
  double upper = kInfinity;

  bool operator==(const Variable&) const = default;
};

struct Term {
  VarId var;
  double coef = 0.0;

  bool operator==(const Term&) const = default;
};

struct LinearConstraint {
  std::vector<Term> terms;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
  // Provenance label, e.g. "SIR(f3,u12)".
  std::string tag;

  bool operator==(const LinearConstraint&) const = default;
};

class Model {
 public:
  VarId AddVariable(std::string name, VarKind kind, double lower,
                    double upper);
  ConstraintId AddConstraint(LinearConstraint constraint);
  void SetObjectiveCoefficient(VarId var, double cost);

  // Replaces the bounds of `var`; used by fixing overlays and branching.
  void SetBounds(VarId var, double lower, double upper);
  // Changing binary -> continuous keeps the bounds; the reverse requires
  // bounds already in {0,1}.
  void SetKind(VarId var, VarKind kind);

  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_constraints() const {
    return static_cast<int>(constraints_.size());
  }
  int num_binaries() const;

  const Variable& variable(VarId var) const;
  const LinearConstraint& constraint(ConstraintId id) const;
  std::span<const Variable> variables() const { return variables_; }
  std::span<const LinearConstraint> constraints() const {
    return constraints_;
  }
  std::span<const double> objective() const { return objective_; }
  double objective_coefficient(VarId var) const;

  // Returns an invalid id (value -1) when no such name exists.
  VarId Find(std::string_view name) const;
  bool Contains(VarId var) const {
    return var.value >= 0 && var.value < num_variables();
  }

  bool operator==(const Model& other) const;

 private:
  std::vector<Variable> variables_;
  std::vector<LinearConstraint> constraints_;
  std::vector<double> objective_;
  std::unordered_map<std::string, int32_t> name_index_;
};

// Values indexed by VarId. Missing entries are NaN.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(int size);
  explicit Assignment(std::vector<double> values)
      : values_(std::move(values)) {}

  double operator[](VarId var) const { return values_.at(var.value); }
  double& operator[](VarId var) { return values_.at(var.value); }
  std::span<const double> values() const { return values_; }
  int size() const { return static_cast<int>(values_.size()); }
  bool IsTotalFor(const Model& model) const;

  bool operator==(const Assignment&) const = default;

 private:
  std::vector<double> values_;
};

struct ConstraintViolation {
  ConstraintId id;
  // Amount by which the row is violated (always positive).
  double slack = 0.0;
};

struct BoundViolation {
  VarId var;
  double amount = 0.0;
  bool integrality = false;
};

struct Evaluation {
  double objective = 0.0;
  std::vector<ConstraintViolation> violations;
  std::vector<BoundViolation> bound_violations;

  bool feasible() const {
    return violations.empty() && bound_violations.empty();
  }
};

using Fixings = std::map<VarId, double>;

// Copy of `model` with every binary turned continuous on [0, 1].
Model LpRelaxation(const Model& model);

// Copy of `model` with lower = upper = value for every fixed variable.
Model ApplyFixings(const Model& model, const Fixings& fixings);

double RowActivity(const LinearConstraint& row, const Assignment& assignment);

// Residual amount by which `activity` violates the row (0 when satisfied).
double RowViolation(const LinearConstraint& row, double activity);

Evaluation Evaluate(const Model& model, const Assignment& assignment,
                    double tol = kFeasibilityTol);

// CPLEX-style LP text (Minimize / Subject To / Bounds / Binaries / End).
std::string ExportLpText(const Model& model);

}  // namespace confl3

#endif  // CONFL3_MILP_HPP_
