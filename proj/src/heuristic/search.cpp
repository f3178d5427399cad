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
#include <string>

#include "confl3/error.hpp"
#include "confl3/heuristic.hpp"
#include "heuristic/construction.hpp"

namespace confl3 {

namespace {

const char* kTechNames[kNumTechnologies] = {"fiber", "copper", "wireless"};

MipOptions Limits(const HeuristicParams& params, double time_limit) {
  MipOptions o;
  o.time_limit = params.test_mode() ? kInfinity : time_limit;
  o.node_limit = params.node_limit;
  o.lp = params.lp;
  return o;
}

double ImprovementStep(double incumbent) {
  return 1e-6 * std::max(1.0, std::abs(incumbent));
}

class Clock {
 public:
  Clock() : start_(std::chrono::steady_clock::now()) {}
  double Elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

ZCenter FosCenter(const Instance& instance, const Fos& fos) {
  ZCenter center(instance.num_facilities());
  for (auto& row : center) row.fill(-1);
  for (const FacilityTech& e : fos.entries()) {
    center[e.facility].fill(0);
    center[e.facility][e.tech] = 1;
  }
  return center;
}

ZCenter AssignmentCenter(const ConflModel& confl, const Assignment& assignment) {
  ZCenter center(confl.z.size());
  for (size_t f = 0; f < confl.z.size(); ++f) {
    center[f].fill(-1);
    for (int t = 0; t < confl.num_techs; ++t) {
      center[f][t] = assignment[confl.z[f][t]] > 0.5 ? 1 : 0;
    }
  }
  return center;
}

SolveOutcome Vlns(const ConflModel& confl, const ZCenter& center, int radius,
                  VlnsMode mode, std::optional<double> incumbent,
                  const MipOptions& options) {
  if (radius < 0) throw Error(ErrorCode::kInvalidArgument, "negative VLNS radius");
  if (center.size() != confl.z.size()) {
    throw Error(ErrorCode::kContractViolation, "centre size differs from facility count");
  }
  Model model = confl.model;
  LinearConstraint hamming;
  hamming.tag = "HAMMING";
  hamming.rhs = radius;
  for (size_t f = 0; f < center.size(); ++f) {
    for (int t = 0; t < confl.num_techs; ++t) {
      if (center[f][t] < 0) continue;
      if (center[f][t] == 1) {
        hamming.terms.push_back({confl.z[f][t], -1.0});
        hamming.rhs -= 1.0;
      } else {
        hamming.terms.push_back({confl.z[f][t], 1.0});
      }
    }
  }
  if (!hamming.terms.empty()) model.AddConstraint(std::move(hamming));

  MipOptions opts = options;
  if (mode == VlnsMode::kImprove) {
    if (!incumbent) {
      throw Error(ErrorCode::kContractViolation, "improve mode needs an incumbent value");
    }
    const double limit = *incumbent - ImprovementStep(*incumbent);
    LinearConstraint cutoff;
    cutoff.tag = "IMPROVE";
    cutoff.rhs = limit;
    const std::span<const double> cost = model.objective();
    for (int j = 0; j < model.num_variables(); ++j) {
      if (cost[j] != 0.0) cutoff.terms.push_back({VarId{j}, cost[j]});
    }
    model.AddConstraint(std::move(cutoff));
    opts.cutoff = limit;
  }

  const MipResult r = SolveMip(model, opts);
  SolveOutcome out;
  out.status = r.status;
  out.repaired = mode == VlnsMode::kRepair;
  if (r.has_incumbent() &&
      (mode == VlnsMode::kRepair || r.objective < *incumbent)) {
    out.assignment = r.incumbent;
    out.objective = r.objective;
  } else if (r.has_incumbent()) {
    out.status = MipStatus::kInfeasible;
  }
  return out;
}

SolveOutcome CheckAndRepair(const Instance& instance, const ConflModel& confl,
                            const Fos& fos, const HeuristicParams& params) {
  const ZCenter center = FosCenter(instance, fos);
  Fixings fixings;
  for (size_t f = 0; f < center.size(); ++f) {
    for (int t = 0; t < confl.num_techs; ++t) {
      if (center[f][t] >= 0) fixings[confl.z[f][t]] = center[f][t];
    }
  }
  const MipResult r = SolveMip(ApplyFixings(confl.model, fixings),
                               Limits(params, params.subproblem_time_limit));
  if (r.has_incumbent()) {
    SolveOutcome out;
    out.status = r.status;
    out.assignment = r.incumbent;
    out.objective = r.objective;
    return out;
  }
  return Vlns(confl, center, params.RadiusFor(instance), VlnsMode::kRepair,
              std::nullopt, Limits(params, params.vlns_time_limit));
}

RunResult Run(const Instance& instance, const HeuristicParams& params) {
  ValidateHeuristicParams(params);
  ValidateInstance(instance);
  for (int t = 0; t < kNumTechnologies; ++t) {
    double potential = 0.0;
    for (int f = 0; f < instance.num_facilities(); ++f) {
      potential += instance.PotentialWeight(f, t);
    }
    if (potential < instance.coverage[t]) {
      throw Error(ErrorCode::kUnattainableCoverage,
                  std::string("coverage threshold for ") + kTechNames[t] +
                      " (technology " + std::to_string(t + 1) + ") is " +
                      std::to_string(instance.coverage[t]) +
                      " but all facilities together reach only " +
                      std::to_string(potential));
    }
  }

  const Clock clock;
  const ConflModel plain = Build3Confl(instance);
  const ConflModel strong = Strengthen(plain, instance);
  AttractivenessTable table = AttractivenessInit(instance, strong, params.lp);
  const Model relaxed_plain = LpRelaxation(plain.model);
  const double lower = table.root_bound;
  const int radius = params.RadiusFor(instance);
  Rng rng(params.rng_seed);

  RunResult result;
  result.lower_bound = lower;
  std::optional<double> average;

  auto remaining = [&](double cap) {
    return std::max(1e-3, std::min(cap, params.global_time_limit - clock.Elapsed()));
  };
  auto accept = [&](const SolveOutcome& o) {
    return o.has_solution() && VerifySolution(instance, plain, *o.assignment).feasible();
  };

  for (int h = 1;; ++h) {
    if (params.test_mode()) {
      if (h > *params.max_outer_iterations) break;
    } else if (h > 1 && (clock.Elapsed() >= params.outer_loop_limit ||
                         clock.Elapsed() >= params.global_time_limit)) {
      break;
    }
    std::optional<Assignment> inner_best;
    double inner_value = kInfinity;
    std::vector<SigmaSample> samples;
    for (int sigma = 1; sigma <= params.sigma_count; ++sigma) {
      const internal::Construction built =
          internal::Construct(instance, plain, relaxed_plain, table, params, rng);
      HeuristicParams sub = params;
      sub.subproblem_time_limit = remaining(params.subproblem_time_limit);
      sub.vlns_time_limit = remaining(params.vlns_time_limit);
      const SolveOutcome outcome = CheckAndRepair(instance, plain, built.fos, sub);

      TraceEntry entry;
      entry.outer = h;
      entry.sigma = sigma;
      entry.fos = built.fos;
      entry.complete = built.complete;
      entry.repaired = outcome.repaired;
      entry.status = outcome.status;
      SigmaSample sample{built.fos, std::nullopt};
      if (accept(outcome)) {
        entry.objective = outcome.objective;
        sample.objective = outcome.objective;
        if (outcome.objective < inner_value) {
          inner_value = outcome.objective;
          inner_best = outcome.assignment;
        }
      }
      samples.push_back(std::move(sample));
      const double best_so_far = std::min(inner_value, result.objective);
      if (best_so_far < kInfinity) entry.best = best_so_far;
      if (params.on_trace) params.on_trace(entry);
      result.trace.push_back(std::move(entry));
    }

    if (h > 1 && average) table = TauUpdate(table, samples, *average, lower);
    table.iteration = h;
    double sum = 0.0;
    int count = 0;
    for (const SigmaSample& s : samples) {
      if (s.objective) {
        sum += *s.objective;
        ++count;
      }
    }
    if (count > 0) average = sum / count;
    if (inner_best && inner_value < result.objective) {
      result.best = inner_best;
      result.objective = inner_value;
    }
    result.outer_iterations = h;
  }

  // Re-centre on each improvement until the neighbourhood holds nothing
  // better or the final-search budget is spent.
  const Clock final_clock;
  while (result.best) {
    const double budget = params.vlns_time_limit - final_clock.Elapsed();
    if (!params.test_mode() && budget <= 0.0) break;
    const SolveOutcome improved =
        Vlns(plain, AssignmentCenter(plain, *result.best), radius, VlnsMode::kImprove,
             result.objective, Limits(params, remaining(budget)));
    if (!accept(improved) || !(improved.objective < result.objective)) break;
    result.best = improved.assignment;
    result.objective = improved.objective;
    result.final_improved = true;
  }

  if (!result.best) {
    result.status = RunStatus::kNoSolution;
    return result;
  }
  result.status = RunStatus::kSolved;
  result.gap = result.objective > 0.0 ? OGap(result.objective, lower) : 0.0;
  return result;
}

}  // namespace confl3
