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

// Internal interface of the bounded primal simplex. Columns 0..n-1 are the
// model variables, columns n..n+m-1 are row logicals r_i with
// a_i x - r_i = 0 and the row sense folded into the bounds of r_i.

#ifndef CONFL3_SRC_SOLVER_SIMPLEX_HPP_
#define CONFL3_SRC_SOLVER_SIMPLEX_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "confl3/milp.hpp"
#include "confl3/solver.hpp"

namespace confl3::internal {

struct LpData {
  int num_rows = 0;
  int num_cols = 0;
  // Structural columns in compressed sparse column form.
  std::vector<int> col_start;
  std::vector<int> row_index;
  std::vector<double> value;
  std::vector<double> cost;
  // Bounds for all num_cols + num_rows columns.
  std::vector<double> lower;
  std::vector<double> upper;

  static LpData FromModel(const Model& model);
};

struct SimplexSolution {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;  // structural values only
  int64_t iterations = 0;
  // Final column states (see BasisState), set when optimal.
  std::vector<uint8_t> basis;
};

enum BasisState : uint8_t { kBasisBasic, kBasisLower, kBasisUpper, kBasisFree };

// Solves min cost.x over `data`, using `lower`/`upper` (length num_cols)
// in place of the structural bounds stored in `data`. A `warm_basis` from an
// earlier solve of the same data seeds the start; it is ignored unless it
// has exactly one basic column per row.
SimplexSolution RunSimplex(const LpData& data, std::span<const double> lower,
                           std::span<const double> upper,
                           const SimplexOptions& options,
                           std::span<const uint8_t> warm_basis = {});

}  // namespace confl3::internal

#endif  // CONFL3_SRC_SOLVER_SIMPLEX_HPP_
