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

// MILP formulations of connected facility location with fiber, copper and
// wireless access, plus the valid inequalities that strengthen them.

#ifndef CONFL3_CONFL_MODEL_HPP_
#define CONFL3_CONFL_MODEL_HPP_

#include <array>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "confl3/instance.hpp"
#include "confl3/milp.hpp"

namespace confl3 {

// An arc of the routing graph: either root -> central office or a core arc.
struct RoutingArc {
  CoreNode tail;
  CoreNode head;
  double cost = 0.0;
};

struct ConflModel {
  Model model;
  int num_techs = 0;

  // Root arcs (one per central office, priced at its opening cost) come
  // first, followed by the instance's core arcs in file order.
  std::vector<RoutingArc> arcs;
  int num_root_arcs = 0;

  std::vector<std::array<VarId, kNumTechnologies>> z;  // [facility][tech]
  std::vector<VarId> x;                                // [arc]
  // [tech][position in instance.assignment_arcs[tech]]
  std::array<std::vector<VarId>, kNumTechnologies> y;
  std::vector<std::array<VarId, kNumTechnologies>> v;  // [user][tech]
  std::vector<std::vector<VarId>> phi;                 // [arc][commodity]
  std::vector<VarId> p;                                // [facility], wireless only

  int superinterferer_rows = 0;
  int conflict_rows = 0;

  // y variable of (f, u) on technology t; VarId{-1} when no such arc exists.
  VarId AssignmentVar(int facility, int user, int tech) const;

  // All z variables in (facility, tech) order.
  std::vector<VarId> OpeningVars() const;

  std::map<std::tuple<int, int, int>, VarId> assignment_index;
};

ConflModel Build2Confl(const Instance& instance);
ConflModel Build3Confl(const Instance& instance);

// Smallest constant that deactivates the SIR row of (f, u) for every power
// vector in the box when the user is not served by f.
double BigM(const Instance& instance, int facility, int user);

// Interferers that deny service to u from f on their own, even at minimum
// power against f at maximum power.
std::set<int> Superinterferers(const Instance& instance, int user,
                               int facility);

struct ServicePair {
  int facility = 0;
  int user = 0;
  auto operator<=>(const ServicePair&) const = default;
};

// Unordered pairs of wireless service links whose SIR requirements cannot
// both hold inside the power box. Each pair is stored with first < second.
std::set<std::pair<ServicePair, ServicePair>> ConflictPairs(
    const Instance& instance);

// Appends the superinterferer and conflict rows to a wireless model.
ConflModel Strengthen(ConflModel confl, const Instance& instance);

struct VerificationReport {
  std::vector<std::string> domain;
  std::vector<std::string> single_tech;
  std::vector<std::string> assignment;
  std::vector<std::string> linking;
  std::vector<std::string> coverage;
  std::vector<std::string> flow;
  std::vector<std::string> capacity;
  std::vector<std::string> sir;
  std::vector<std::string> power_bounds;
  double objective = 0.0;

  bool feasible() const;
  // One line per violation, prefixed by its family.
  std::vector<std::string> Summary() const;
};

inline constexpr double kSirTolerance = 1e-6;
inline constexpr double kFlowTolerance = 1e-9;

// Re-derives every family of the formulation from the instance data and
// checks it against the assignment; the model rows are never consulted.
VerificationReport VerifySolution(const Instance& instance,
                                  const ConflModel& confl,
                                  const Assignment& assignment);

}  // namespace confl3

#endif  // CONFL3_CONFL_MODEL_HPP_
