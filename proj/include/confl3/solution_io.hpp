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

// Solution documents written by `confl3 solve` / `confl3 exact` and read
// back by `confl3 report`. They carry no timing data, so seeded runs
// serialize byte for byte identically.

#ifndef CONFL3_SOLUTION_IO_HPP_
#define CONFL3_SOLUTION_IO_HPP_

#include <optional>
#include <string>
#include <vector>

#include "confl3/confl_model.hpp"
#include "confl3/heuristic.hpp"
#include "confl3/instance.hpp"
#include "confl3/instance_io.hpp"
#include "confl3/solver.hpp"

namespace confl3 {

std::string HeuristicSolutionJson(const Instance& instance,
                                  const HeuristicParams& params,
                                  const RunResult& result);

std::string ExactSolutionJson(const Instance& instance, const ConflModel& confl,
                              bool strengthened, const MipResult& result);

struct SolutionSummary {
  std::string method;  // "heuristic" or "exact"
  std::string instance_name;
  std::string instance_hash;
  std::string status;
  std::optional<double> objective;
  double lower_bound = 0.0;
  std::optional<double> gap;  // fraction in [0, 1)
};

// Throws Error(kSchema) with the offending path.
SolutionSummary ReadSolutionSummary(const std::string& text);

// One row per instance hash, pairing its exact (reference) and heuristic
// solutions; rows keep the order in which hashes first appear. Throws
// Error(kInvalidArgument) when a hash lacks either side, has duplicates,
// or a side has no gap.
std::vector<ResultRow> PairSolutions(const std::vector<SolutionSummary>& solutions);

// Rows from "id,gap_ref_pct,gap_heu_pct" lines; a header line is allowed.
std::vector<ResultRow> ReadResultRowsCsv(const std::string& text);

}  // namespace confl3

#endif  // CONFL3_SOLUTION_IO_HPP_
