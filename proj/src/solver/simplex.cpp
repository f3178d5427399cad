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

// Bounded-variable primal revised simplex.
//
// Phase 1 minimizes the sum of basic bound infeasibilities with a cost
// vector rebuilt every iteration; phase 2 minimizes the model objective.
// The basis inverse is kept as a sparse LU factorization of the last
// refactored basis followed by a product-form eta file. Pricing is Dantzig;
// after `degenerate_limit` consecutive zero-step pivots both pricing and
// the ratio test switch to Bland's smallest-index rule until a step of
// positive length is taken.

#include "simplex.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <utility>

#include "confl3/error.hpp"

namespace confl3::internal {

LpData LpData::FromModel(const Model& model) {
  LpData data;
  data.num_rows = model.num_constraints();
  data.num_cols = model.num_variables();
  const int n = data.num_cols;
  const int m = data.num_rows;

  std::vector<int> counts(n, 0);
  for (const LinearConstraint& row : model.constraints()) {
    for (const Term& t : row.terms) {
      if (t.coef != 0.0) ++counts[t.var.value];
    }
  }
  data.col_start.assign(n + 1, 0);
  for (int j = 0; j < n; ++j) data.col_start[j + 1] = data.col_start[j] + counts[j];
  data.row_index.resize(data.col_start[n]);
  data.value.resize(data.col_start[n]);
  std::vector<int> fill(data.col_start.begin(), data.col_start.end() - 1);
  for (int i = 0; i < m; ++i) {
    for (const Term& t : model.constraint(ConstraintId{i}).terms) {
      if (t.coef == 0.0) continue;
      const int k = fill[t.var.value]++;
      data.row_index[k] = i;
      data.value[k] = t.coef;
    }
  }

  data.cost.assign(model.objective().begin(), model.objective().end());
  data.lower.resize(n + m);
  data.upper.resize(n + m);
  for (int j = 0; j < n; ++j) {
    const Variable& v = model.variable(VarId{j});
    data.lower[j] = v.lower;
    data.upper[j] = v.upper;
  }
  for (int i = 0; i < m; ++i) {
    const LinearConstraint& row = model.constraint(ConstraintId{i});
    switch (row.sense) {
      case Sense::kLessEqual:
        data.lower[n + i] = -kInfinity;
        data.upper[n + i] = row.rhs;
        break;
      case Sense::kGreaterEqual:
        data.lower[n + i] = row.rhs;
        data.upper[n + i] = kInfinity;
        break;
      case Sense::kEqual:
        data.lower[n + i] = row.rhs;
        data.upper[n + i] = row.rhs;
        break;
    }
  }
  return data;
}

namespace {

enum class ColState : uint8_t { kBasic, kAtLower, kAtUpper, kFree };

// LU of a reference basis plus a product-form update file.
class BasisFactor {
 public:
  explicit BasisFactor(int m) : m_(m) {}

  bool Factor(const LpData& data, std::span<const int> head) {
    etas_.clear();
    if (m_ == 0) return true;
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<size_t>(m_) * 2);
    const int n = data.num_cols;
    for (int p = 0; p < m_; ++p) {
      const int j = head[p];
      if (j >= n) {
        triplets.emplace_back(j - n, p, -1.0);
      } else {
        for (int k = data.col_start[j]; k < data.col_start[j + 1]; ++k) {
          triplets.emplace_back(data.row_index[k], p, data.value[k]);
        }
      }
    }
    Eigen::SparseMatrix<double> basis(m_, m_);
    basis.setFromTriplets(triplets.begin(), triplets.end());
    basis.makeCompressed();
    lu_.analyzePattern(basis);
    lu_.factorize(basis);
    return lu_.info() == Eigen::Success;
  }

  // v := B^{-1} v
  void Ftran(std::vector<double>& v) const {
    if (m_ == 0) return;
    Eigen::Map<Eigen::VectorXd> vec(v.data(), m_);
    Eigen::VectorXd solved = lu_.solve(vec);
    vec = solved;
    for (const Eta& eta : etas_) {
      const double vp = v[eta.pivot_row] / eta.pivot;
      v[eta.pivot_row] = vp;
      if (vp == 0.0) continue;
      for (const auto& [i, a] : eta.entries) v[i] -= a * vp;
    }
  }

  // c := B^{-T} c
  void Btran(std::vector<double>& c) {
    if (m_ == 0) return;
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double sum = c[it->pivot_row];
      for (const auto& [i, a] : it->entries) sum -= a * c[i];
      c[it->pivot_row] = sum / it->pivot;
    }
    Eigen::Map<Eigen::VectorXd> vec(c.data(), m_);
    Eigen::VectorXd solved = lu_.transpose().solve(vec);
    vec = solved;
  }

  void AddEta(int pivot_row, const std::vector<double>& alpha) {
    Eta eta;
    eta.pivot_row = pivot_row;
    eta.pivot = alpha[pivot_row];
    for (int i = 0; i < m_; ++i) {
      if (i != pivot_row && alpha[i] != 0.0) eta.entries.emplace_back(i, alpha[i]);
    }
    etas_.push_back(std::move(eta));
  }

  int num_etas() const { return static_cast<int>(etas_.size()); }

 private:
  struct Eta {
    int pivot_row = 0;
    double pivot = 1.0;
    std::vector<std::pair<int, double>> entries;
  };

  int m_;
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
  std::vector<Eta> etas_;
};

class Simplex {
 public:
  Simplex(const LpData& data, std::span<const double> lower,
          std::span<const double> upper, const SimplexOptions& options)
      : data_(data),
        options_(options),
        m_(data.num_rows),
        n_(data.num_cols),
        lower_(data.lower),
        upper_(data.upper),
        x_(n_ + m_, 0.0),
        state_(n_ + m_, ColState::kAtLower),
        head_(m_),
        factor_(m_) {
    for (int j = 0; j < n_; ++j) {
      lower_[j] = lower[j];
      upper_[j] = upper[j];
    }
    double max_cost = 0.0;
    for (double c : data.cost) max_cost = std::max(max_cost, std::abs(c));
    phase2_dual_tol_ = options.dual_tol * std::max(1.0, max_cost);
  }

  SimplexSolution Solve(std::span<const uint8_t> warm_basis);

 private:
  bool LoadBasis(std::span<const uint8_t> basis) {
    if (static_cast<int>(basis.size()) != n_ + m_) return false;
    int basics = 0;
    for (uint8_t b : basis) basics += b == kBasisBasic;
    if (basics != m_) return false;
    int p = 0;
    for (int j = 0; j < n_ + m_; ++j) {
      switch (basis[j]) {
        case kBasisBasic:
          state_[j] = ColState::kBasic;
          head_[p++] = j;
          break;
        case kBasisUpper:
          PlaceNonbasic(j, std::isfinite(upper_[j]) ? upper_[j] : lower_[j]);
          break;
        default:
          PlaceNonbasic(j, std::isfinite(lower_[j]) ? lower_[j] : upper_[j]);
          break;
      }
    }
    return true;
  }

  // Dot product of column j with a dense row-space vector.
  double ColumnDot(int j, const std::vector<double>& y) const {
    if (j >= n_) return -y[j - n_];
    double s = 0.0;
    for (int k = data_.col_start[j]; k < data_.col_start[j + 1]; ++k) {
      s += data_.value[k] * y[data_.row_index[k]];
    }
    return s;
  }

  void LoadColumn(int j, std::vector<double>& out) const {
    std::fill(out.begin(), out.end(), 0.0);
    if (j >= n_) {
      out[j - n_] = -1.0;
      return;
    }
    for (int k = data_.col_start[j]; k < data_.col_start[j + 1]; ++k) {
      out[data_.row_index[k]] = data_.value[k];
    }
  }

  void PlaceNonbasic(int j, double hint) {
    const bool has_lo = std::isfinite(lower_[j]);
    const bool has_up = std::isfinite(upper_[j]);
    if (has_lo && has_up) {
      const bool use_upper =
          std::abs(hint - upper_[j]) < std::abs(hint - lower_[j]);
      state_[j] = use_upper ? ColState::kAtUpper : ColState::kAtLower;
      x_[j] = use_upper ? upper_[j] : lower_[j];
    } else if (has_lo) {
      state_[j] = ColState::kAtLower;
      x_[j] = lower_[j];
    } else if (has_up) {
      state_[j] = ColState::kAtUpper;
      x_[j] = upper_[j];
    } else {
      state_[j] = ColState::kFree;
      x_[j] = 0.0;
    }
  }

  void SlackBasis() {
    for (int j = 0; j < n_; ++j) {
      if (state_[j] == ColState::kBasic) PlaceNonbasic(j, x_[j]);
    }
    for (int i = 0; i < m_; ++i) {
      head_[i] = n_ + i;
      state_[n_ + i] = ColState::kBasic;
    }
  }

  void Refactor() {
    if (factor_.Factor(data_, head_)) return;
    // Numerical breakdown: restart from the always-regular slack basis.
    if (++resets_ > 3) {
      throw Error(ErrorCode::kNumerical, "simplex basis repeatedly singular");
    }
    SlackBasis();
    if (!factor_.Factor(data_, head_)) {
      throw Error(ErrorCode::kNumerical, "slack basis factorization failed");
    }
  }

  // x_B = B^{-1} (-sum_{j nonbasic} a_j x_j)
  void RecomputeBasics() {
    std::vector<double> rhs(m_, 0.0);
    for (int j = 0; j < n_; ++j) {
      if (state_[j] == ColState::kBasic || x_[j] == 0.0) continue;
      for (int k = data_.col_start[j]; k < data_.col_start[j + 1]; ++k) {
        rhs[data_.row_index[k]] -= data_.value[k] * x_[j];
      }
    }
    for (int i = 0; i < m_; ++i) {
      const int j = n_ + i;
      if (state_[j] != ColState::kBasic) rhs[i] += x_[j];
    }
    factor_.Ftran(rhs);
    for (int p = 0; p < m_; ++p) x_[head_[p]] = rhs[p];
  }

  double Infeasibility(int j) const {
    const double tol = options_.primal_tol;
    if (x_[j] < lower_[j] - tol) return lower_[j] - x_[j];
    if (x_[j] > upper_[j] + tol) return x_[j] - upper_[j];
    return 0.0;
  }

  const LpData& data_;
  SimplexOptions options_;
  int m_;
  int n_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> x_;
  std::vector<ColState> state_;
  std::vector<int> head_;
  BasisFactor factor_;
  double phase2_dual_tol_ = 1e-9;
  int resets_ = 0;
};

SimplexSolution Simplex::Solve(std::span<const uint8_t> warm_basis) {
  SimplexSolution result;
  for (int j = 0; j < n_ + m_; ++j) {
    if (lower_[j] > upper_[j]) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
  }
  if (!LoadBasis(warm_basis)) {
    for (int j = 0; j < n_; ++j) PlaceNonbasic(j, 0.0);
    SlackBasis();
  }
  Refactor();
  RecomputeBasics();

  const int64_t iteration_limit =
      options_.iteration_limit > 0
          ? options_.iteration_limit
          : 200 * static_cast<int64_t>(n_ + m_) + 20000;
  const double harris_tol = 0.5 * options_.primal_tol;

  std::vector<double> y(m_);
  std::vector<double> alpha(m_);
  int64_t degenerate_run = 0;
  bool bland = false;

  for (int64_t iter = 0;; ++iter) {
    if (iter >= iteration_limit) {
      throw Error(ErrorCode::kNumerical, "simplex iteration limit reached");
    }
    if (factor_.num_etas() >= options_.refactor_interval) {
      Refactor();
      RecomputeBasics();
    }

    bool phase1 = false;
    for (int p = 0; p < m_; ++p) {
      if (Infeasibility(head_[p]) > 0.0) {
        phase1 = true;
        break;
      }
    }
    for (int p = 0; p < m_; ++p) {
      const int j = head_[p];
      if (phase1) {
        const double tol = options_.primal_tol;
        y[p] = x_[j] < lower_[j] - tol ? -1.0
               : x_[j] > upper_[j] + tol ? 1.0
                                          : 0.0;
      } else {
        y[p] = j < n_ ? data_.cost[j] : 0.0;
      }
    }
    factor_.Btran(y);

    // Pricing.
    const double dual_tol = phase1 ? options_.dual_tol : phase2_dual_tol_;
    int entering = -1;
    double entering_d = 0.0;
    double best = 0.0;
    for (int j = 0; j < n_ + m_; ++j) {
      const ColState s = state_[j];
      if (s == ColState::kBasic || lower_[j] == upper_[j]) continue;
      const double cj = (!phase1 && j < n_) ? data_.cost[j] : 0.0;
      const double d = cj - ColumnDot(j, y);
      bool eligible = false;
      if (s == ColState::kAtLower) eligible = d < -dual_tol;
      else if (s == ColState::kAtUpper) eligible = d > dual_tol;
      else eligible = std::abs(d) > dual_tol;
      if (!eligible) continue;
      if (bland) {
        entering = j;
        entering_d = d;
        break;
      }
      if (std::abs(d) > best) {
        best = std::abs(d);
        entering = j;
        entering_d = d;
      }
    }

    if (entering < 0) {
      if (factor_.num_etas() > 0) {
        // Confirm on a fresh factorization before declaring termination.
        Refactor();
        RecomputeBasics();
        continue;
      }
      result.iterations = iter;
      if (phase1) {
        result.status = LpStatus::kInfeasible;
        return result;
      }
      result.status = LpStatus::kOptimal;
      break;
    }

    const double dir = entering_d < 0.0 ? 1.0 : -1.0;
    LoadColumn(entering, alpha);
    factor_.Ftran(alpha);

    // Ratio test; basic p moves at rate -dir * alpha[p].
    const double flip_limit = upper_[entering] - lower_[entering];
    auto limit_of = [&](int p, double slack_tol, double* ratio,
                        bool* to_upper) {
      const double rate = -dir * alpha[p];
      if (std::abs(alpha[p]) <= options_.pivot_tol) return false;
      const int j = head_[p];
      const double xj = x_[j];
      const double tol = options_.primal_tol;
      if (rate < 0.0) {
        if (xj < lower_[j] - tol) return false;
        *to_upper = xj > upper_[j] + tol;
        const double bound = *to_upper ? upper_[j] : lower_[j];
        if (!std::isfinite(bound)) return false;
        *ratio = (xj - (bound - slack_tol)) / -rate;
      } else {
        if (xj > upper_[j] + tol) return false;
        *to_upper = !(xj < lower_[j] - tol);
        const double bound = *to_upper ? upper_[j] : lower_[j];
        if (!std::isfinite(bound)) return false;
        *ratio = ((bound + slack_tol) - xj) / rate;
      }
      return true;
    };

    int leave = -1;
    bool leave_to_upper = false;
    double theta = kInfinity;
    if (bland) {
      for (int p = 0; p < m_; ++p) {
        double ratio;
        bool to_upper;
        if (!limit_of(p, 0.0, &ratio, &to_upper)) continue;
        ratio = std::max(ratio, 0.0);
        const bool tie = leave >= 0 && std::abs(ratio - theta) <= 1e-12;
        if ((ratio < theta && !tie) || (tie && head_[p] < head_[leave])) {
          theta = std::min(theta, ratio);
          leave = p;
          leave_to_upper = to_upper;
        }
      }
    } else {
      double relaxed = kInfinity;
      for (int p = 0; p < m_; ++p) {
        double ratio;
        bool to_upper;
        if (limit_of(p, harris_tol, &ratio, &to_upper)) {
          relaxed = std::min(relaxed, ratio);
        }
      }
      if (std::isfinite(relaxed)) {
        double best_pivot = 0.0;
        for (int p = 0; p < m_; ++p) {
          double ratio;
          bool to_upper;
          if (!limit_of(p, 0.0, &ratio, &to_upper) || ratio > relaxed) continue;
          if (std::abs(alpha[p]) > best_pivot) {
            best_pivot = std::abs(alpha[p]);
            leave = p;
            leave_to_upper = to_upper;
            theta = std::max(ratio, 0.0);
          }
        }
      }
    }

    const bool flip = flip_limit <= theta;
    if (flip) theta = flip_limit;
    if (!std::isfinite(theta)) {
      if (phase1) {
        // A phase-1 ray means the cost vector was stale; refresh and retry.
        Refactor();
        RecomputeBasics();
        if (++resets_ > 6) {
          throw Error(ErrorCode::kNumerical, "phase 1 made no progress");
        }
        continue;
      }
      result.iterations = iter;
      result.status = LpStatus::kUnbounded;
      return result;
    }

    if (theta <= 1e-12) {
      if (++degenerate_run >= options_.degenerate_limit) bland = true;
    } else {
      degenerate_run = 0;
      bland = false;
    }

    for (int p = 0; p < m_; ++p) {
      if (alpha[p] != 0.0) x_[head_[p]] -= dir * theta * alpha[p];
    }
    x_[entering] += dir * theta;

    if (flip) {
      if (state_[entering] == ColState::kAtLower) {
        state_[entering] = ColState::kAtUpper;
        x_[entering] = upper_[entering];
      } else {
        state_[entering] = ColState::kAtLower;
        x_[entering] = lower_[entering];
      }
      continue;
    }

    const int leaving = head_[leave];
    state_[leaving] = leave_to_upper ? ColState::kAtUpper : ColState::kAtLower;
    x_[leaving] = leave_to_upper ? upper_[leaving] : lower_[leaving];
    head_[leave] = entering;
    state_[entering] = ColState::kBasic;
    factor_.AddEta(leave, alpha);
    result.iterations = iter + 1;
  }

  result.x.assign(x_.begin(), x_.begin() + n_);
  for (int j = 0; j < n_; ++j) {
    result.x[j] = std::clamp(result.x[j], lower_[j], upper_[j]);
  }
  result.objective = 0.0;
  for (int j = 0; j < n_; ++j) result.objective += data_.cost[j] * result.x[j];
  result.basis.resize(n_ + m_);
  for (int j = 0; j < n_ + m_; ++j) {
    switch (state_[j]) {
      case ColState::kBasic: result.basis[j] = kBasisBasic; break;
      case ColState::kAtLower: result.basis[j] = kBasisLower; break;
      case ColState::kAtUpper: result.basis[j] = kBasisUpper; break;
      case ColState::kFree: result.basis[j] = kBasisFree; break;
    }
  }
  return result;
}

}  // namespace

SimplexSolution RunSimplex(const LpData& data, std::span<const double> lower,
                           std::span<const double> upper,
                           const SimplexOptions& options,
                           std::span<const uint8_t> warm_basis) {
  Simplex simplex(data, lower, upper, options);
  return simplex.Solve(warm_basis);
}

}  // namespace confl3::internal
