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

#include "heuristic/construction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "confl3/error.hpp"

namespace confl3 {

namespace {

const char* kTechNames[kNumTechnologies] = {"fiber", "copper", "wireless"};

// Root value over fixed value, so cheap fixings score near 1.
double Attractiveness(double root_bound, const LpResult& lp) {
  if (lp.status != LpStatus::kOptimal) return kAttractivenessFloor;
  if (lp.objective <= 0.0) return 1.0;
  return std::max(kAttractivenessFloor, root_bound / lp.objective);
}

}  // namespace

void Fos::Add(FacilityTech entry) {
  if (entry.tech < 0 || entry.tech >= kNumTechnologies) {
    throw Error(ErrorCode::kContractViolation, "technology index out of range");
  }
  if (HasFacility(entry.facility)) {
    throw Error(ErrorCode::kContractViolation,
                "facility " + std::to_string(entry.facility) + " is already in the FOS");
  }
  entries_.insert(entry);
}

bool Fos::HasFacility(int facility) const {
  const auto it = entries_.lower_bound({facility, 0});
  return it != entries_.end() && it->facility == facility;
}

std::string Fos::ToString() const {
  std::string s = "{";
  for (const FacilityTech& e : entries_) {
    if (s.size() > 1) s += ", ";
    s += "(f" + std::to_string(e.facility) + ",t" + std::to_string(e.tech + 1) + ")";
  }
  return s + "}";
}

int HeuristicParams::RadiusFor(const Instance& instance) const {
  if (vlns_radius) return *vlns_radius;
  return std::max(2, static_cast<int>(std::ceil(0.2 * instance.num_facilities())));
}

void ValidateHeuristicParams(const HeuristicParams& p) {
  auto bad = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, "heuristic parameter " + what);
  };
  if (!(p.alpha >= 0.0 && p.alpha <= 1.0)) bad("alpha must lie in [0, 1]");
  if (p.sigma_count < 1) bad("sigma_count must be >= 1");
  if (p.vlns_radius && *p.vlns_radius < 0) bad("vlns_radius must be >= 0");
  if (!(p.global_time_limit > 0.0) || !(p.outer_loop_limit > 0.0) ||
      !(p.subproblem_time_limit > 0.0) || !(p.vlns_time_limit > 0.0)) {
    bad("time limits must be > 0");
  }
  if (p.max_outer_iterations && *p.max_outer_iterations < 1) {
    bad("max_outer_iterations must be >= 1");
  }
}

double OGap(double value, double lower_bound) {
  if (!(value > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "gap needs a positive objective value");
  }
  if (lower_bound > value) {
    if (lower_bound - value > 1e-9 * std::max(1.0, std::abs(value))) {
      throw Error(ErrorCode::kBoundInconsistency,
                  "lower bound " + std::to_string(lower_bound) +
                      " exceeds objective " + std::to_string(value));
    }
    return 0.0;
  }
  return (value - lower_bound) / value;
}

bool IsComplete(const Fos& fos, const Instance& instance, int tech) {
  double reached = 0.0;
  for (const FacilityTech& e : fos.entries()) {
    if (e.tech == tech) reached += instance.PotentialWeight(e.facility, tech);
  }
  return reached >= instance.coverage[tech];
}

AttractivenessTable AttractivenessInit(const Instance& instance,
                                       const ConflModel& strong,
                                       const SimplexOptions& lp) {
  const Model relaxed = LpRelaxation(strong.model);
  const LpResult root = SolveLp(relaxed, lp);
  if (root.status != LpStatus::kOptimal) {
    throw Error(ErrorCode::kInfeasibleRelaxation,
                "the root relaxation is infeasible; no design meets the coverage "
                "thresholds");
  }
  AttractivenessTable table;
  table.root_bound = root.objective;
  const int nf = instance.num_facilities();
  table.tau.assign(nf, {});
  for (int f = 0; f < nf; ++f) {
    for (int t = 0; t < kNumTechnologies; ++t) {
      if (t >= strong.num_techs) {
        table.tau[f][t] = kAttractivenessFloor;
        continue;
      }
      const LpResult fixed = SolveLp(ApplyFixings(relaxed, {{strong.z[f][t], 1.0}}), lp);
      table.tau[f][t] = Attractiveness(table.root_bound, fixed);
    }
  }
  table.initial = table.tau;
  return table;
}

namespace internal {

double PosteriorFromRelaxation(const ConflModel& plain, const Model& relaxed_plain,
                               const Fos& fos, FacilityTech candidate,
                               double root_bound, const SimplexOptions& lp) {
  Fixings fixings;
  for (const FacilityTech& e : fos.entries()) fixings[plain.z[e.facility][e.tech]] = 1.0;
  fixings[plain.z[candidate.facility][candidate.tech]] = 1.0;
  return Attractiveness(root_bound, SolveLp(ApplyFixings(relaxed_plain, fixings), lp));
}

}  // namespace internal

double PosteriorAttractiveness(const ConflModel& plain, const Fos& fos,
                               FacilityTech candidate, double root_bound,
                               const SimplexOptions& lp) {
  if (fos.HasFacility(candidate.facility)) {
    throw Error(ErrorCode::kContractViolation,
                "candidate facility " + std::to_string(candidate.facility) +
                    " is already in the FOS");
  }
  return internal::PosteriorFromRelaxation(plain, LpRelaxation(plain.model), fos,
                                           candidate, root_bound, lp);
}

std::vector<double> FixingProbabilities(const std::vector<double>& tau,
                                        const std::vector<double>& eta,
                                        double alpha) {
  if (tau.empty()) throw Error(ErrorCode::kEmptyCandidates, "no candidates to sample");
  if (tau.size() != eta.size()) {
    throw Error(ErrorCode::kContractViolation, "tau and eta lengths differ");
  }
  std::vector<double> p(tau.size());
  double total = 0.0;
  for (size_t i = 0; i < tau.size(); ++i) {
    if (!(tau[i] > 0.0) || !(eta[i] > 0.0)) {
      throw Error(ErrorCode::kContractViolation, "attractiveness must be positive");
    }
    p[i] = alpha * tau[i] + (1.0 - alpha) * eta[i];
    total += p[i];
  }
  for (double& x : p) x /= total;
  return p;
}

int SampleIndex(const std::vector<double>& probabilities, Rng& rng) {
  if (probabilities.empty()) {
    throw Error(ErrorCode::kEmptyCandidates, "no candidates to sample");
  }
  const double u = rng.Uniform();
  double acc = 0.0;
  int last = 0;
  for (size_t i = 0; i < probabilities.size(); ++i) {
    if (probabilities[i] <= 0.0) continue;
    last = static_cast<int>(i);
    acc += probabilities[i];
    if (u < acc) return last;
  }
  return last;
}

std::vector<FacilityTech> Candidates(const Instance& instance, const Fos& fos,
                                     int tech, const AttractivenessTable& table,
                                     int pool) {
  std::vector<FacilityTech> out;
  for (int f = 0; f < instance.num_facilities(); ++f) {
    if (fos.HasFacility(f) || instance.PotentialWeight(f, tech) <= 0.0) continue;
    out.push_back({f, tech});
  }
  std::stable_sort(out.begin(), out.end(), [&](FacilityTech a, FacilityTech b) {
    return table.tau[a.facility][tech] > table.tau[b.facility][tech];
  });
  if (pool > 0 && static_cast<int>(out.size()) > pool) out.resize(pool);
  return out;
}

namespace internal {

Construction Construct(const Instance& instance, const ConflModel& plain,
                       const Model& relaxed_plain,
                       const AttractivenessTable& table,
                       const HeuristicParams& params, Rng& rng) {
  Construction c;
  for (int t = 0; t < plain.num_techs; ++t) {
    while (!IsComplete(c.fos, instance, t)) {
      const std::vector<FacilityTech> cands =
          Candidates(instance, c.fos, t, table, params.candidate_pool);
      if (cands.empty()) {
        c.complete = false;
        c.stuck_tech = t;
        return c;
      }
      std::vector<double> tau, eta;
      for (const FacilityTech& k : cands) {
        tau.push_back(std::max(kAttractivenessFloor, table.tau[k.facility][t]));
        eta.push_back(PosteriorFromRelaxation(plain, relaxed_plain, c.fos, k,
                                              table.root_bound, params.lp));
      }
      c.fos.Add(cands[SampleIndex(FixingProbabilities(tau, eta, params.alpha), rng)]);
    }
  }
  return c;
}

}  // namespace internal

Fos BuildFos(const Instance& instance, const ConflModel& plain,
             const AttractivenessTable& table, const HeuristicParams& params,
             Rng& rng) {
  const internal::Construction c = internal::Construct(
      instance, plain, LpRelaxation(plain.model), table, params, rng);
  if (!c.complete) {
    throw Error(ErrorCode::kNoCompletableFos,
                std::string("no admissible facility left to complete the ") +
                    kTechNames[c.stuck_tech] + " threshold (technology " +
                    std::to_string(c.stuck_tech + 1) + ")");
  }
  return c.fos;
}

AttractivenessTable TauUpdate(const AttractivenessTable& table,
                              const std::vector<SigmaSample>& samples,
                              double average, double lower_bound) {
  AttractivenessTable next = table;
  if (!(average > 0.0)) return next;
  const double base = OGap(average, lower_bound);
  if (base <= 0.0) return next;
  for (const SigmaSample& s : samples) {
    if (!s.objective) continue;
    const double gap = *s.objective > 0.0 ? OGap(*s.objective, lower_bound) : 0.0;
    const double shift = (base - gap) / base;
    for (const FacilityTech& e : s.fos.entries()) {
      next.tau[e.facility][e.tech] += table.initial[e.facility][e.tech] * shift;
    }
  }
  for (auto& row : next.tau) {
    for (double& v : row) v = std::max(kAttractivenessFloor, v);
  }
  return next;
}

}  // namespace confl3
