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

// LP-guided probabilistic fixing heuristic with exact neighbourhood search.

#ifndef CONFL3_HEURISTIC_HPP_
#define CONFL3_HEURISTIC_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "confl3/confl_model.hpp"
#include "confl3/instance.hpp"
#include "confl3/random.hpp"
#include "confl3/solver.hpp"

namespace confl3 {

inline constexpr double kAttractivenessFloor = 1e-9;

struct FacilityTech {
  int facility = 0;
  int tech = 0;
  auto operator<=>(const FacilityTech&) const = default;
};

// Facilities fixed open, each on exactly one technology.
class Fos {
 public:
  // Throws Error(kContractViolation) if the facility is already present.
  void Add(FacilityTech entry);
  bool Contains(FacilityTech entry) const { return entries_.count(entry) > 0; }
  bool HasFacility(int facility) const;
  const std::set<FacilityTech>& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::string ToString() const;

  bool operator==(const Fos&) const = default;

 private:
  std::set<FacilityTech> entries_;
};

struct AttractivenessTable {
  std::vector<std::array<double, kNumTechnologies>> tau;
  std::vector<std::array<double, kNumTechnologies>> initial;
  // Strengthened root relaxation value used to normalise LP values.
  double root_bound = 0.0;
  int iteration = 0;
};

struct TraceEntry;

struct HeuristicParams {
  double alpha = 0.5;
  int sigma_count = 5;
  // Hamming radius; unset means max(2, ceil(0.2 |F|)).
  std::optional<int> vlns_radius;
  double global_time_limit = 3600.0;
  double outer_loop_limit = 3000.0;
  double subproblem_time_limit = 300.0;
  double vlns_time_limit = 600.0;
  uint64_t rng_seed = 0;
  // Candidates per construction step, ranked by tau (<= 0 keeps all).
  int candidate_pool = 10;
  // Test mode: a set cap replaces every wall-clock limit, making runs
  // reproducible.
  std::optional<int> max_outer_iterations;
  // Branch-and-bound node cap per subproblem (< 0 unlimited).
  int64_t node_limit = -1;
  SimplexOptions lp;
  // Called after every sampled FOS is solved; unset by default.
  std::function<void(const TraceEntry&)> on_trace;

  int RadiusFor(const Instance& instance) const;
  bool test_mode() const { return max_outer_iterations.has_value(); }
};

void ValidateHeuristicParams(const HeuristicParams& params);

struct SolveOutcome {
  MipStatus status = MipStatus::kTimeoutNoIncumbent;
  std::optional<Assignment> assignment;
  double objective = kInfinity;
  bool repaired = false;

  bool has_solution() const { return assignment.has_value(); }
};

// (v - L) / v. Throws kInvalidArgument for v <= 0 and kBoundInconsistency
// when L exceeds v beyond a relative 1e-9.
double OGap(double value, double lower_bound);

// Sum over FOS facilities on `tech` of the weight they can reach; a user
// reachable from two such facilities counts twice.
bool IsComplete(const Fos& fos, const Instance& instance, int tech);

// Solves the strengthened relaxation once per (f, t) with z_ft = 1.
AttractivenessTable AttractivenessInit(const Instance& instance,
                                       const ConflModel& strong,
                                       const SimplexOptions& lp = {});

double PosteriorAttractiveness(const ConflModel& plain, const Fos& fos,
                               FacilityTech candidate, double root_bound,
                               const SimplexOptions& lp = {});

std::vector<double> FixingProbabilities(const std::vector<double>& tau,
                                        const std::vector<double>& eta,
                                        double alpha);

// Index drawn from `probabilities` with one uniform variate.
int SampleIndex(const std::vector<double>& probabilities, Rng& rng);

// Candidates for `tech`: not yet in the FOS, facility unused, nonzero
// reachable weight; ordered by tau and truncated to the pool size.
std::vector<FacilityTech> Candidates(const Instance& instance, const Fos& fos,
                                     int tech, const AttractivenessTable& table,
                                     int pool);

// Throws Error(kNoCompletableFos) when a technology stays partial with no
// candidate left.
Fos BuildFos(const Instance& instance, const ConflModel& plain,
             const AttractivenessTable& table, const HeuristicParams& params,
             Rng& rng);

// z values of a (possibly partial) centre; -1 marks free coordinates.
using ZCenter = std::vector<std::array<int, kNumTechnologies>>;

ZCenter FosCenter(const Instance& instance, const Fos& fos);
ZCenter AssignmentCenter(const ConflModel& confl, const Assignment& assignment);

// Solve with the FOS fixing, falling back to repair search when that is
// infeasible or runs out of time without a solution.
SolveOutcome CheckAndRepair(const Instance& instance, const ConflModel& confl,
                            const Fos& fos, const HeuristicParams& params);

enum class VlnsMode { kRepair, kImprove };

// Exact search over solutions whose centred z coordinates differ from the
// centre in at most `radius` places. Improve mode only accepts objectives
// strictly below `incumbent`.
SolveOutcome Vlns(const ConflModel& confl, const ZCenter& center, int radius,
                  VlnsMode mode, std::optional<double> incumbent,
                  const MipOptions& options);

struct SigmaSample {
  Fos fos;
  std::optional<double> objective;
};

// Rewards fixings whose solutions beat the running average and penalises
// the others, in proportion to their initial attractiveness.
AttractivenessTable TauUpdate(const AttractivenessTable& table,
                              const std::vector<SigmaSample>& samples,
                              double average, double lower_bound);

struct TraceEntry {
  int outer = 0;
  int sigma = 0;
  Fos fos;
  bool complete = true;
  bool repaired = false;
  MipStatus status = MipStatus::kTimeoutNoIncumbent;
  std::optional<double> objective;
  std::optional<double> best;
};

enum class RunStatus { kSolved, kNoSolution };

struct RunResult {
  RunStatus status = RunStatus::kNoSolution;
  std::optional<Assignment> best;
  double objective = kInfinity;
  double lower_bound = 0.0;
  double gap = 1.0;
  int outer_iterations = 0;
  bool final_improved = false;
  std::vector<TraceEntry> trace;
};

// Throws Error(kUnattainableCoverage) naming the technology when no FOS
// can ever be complete.
RunResult Run(const Instance& instance, const HeuristicParams& params);

}  // namespace confl3

#endif  // CONFL3_HEURISTIC_HPP_
