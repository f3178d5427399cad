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
#include <set>
#include <string>

#include "confl3/error.hpp"
#include "confl3/instance.hpp"

namespace confl3 {

std::string CoreNodeName(CoreNode node) {
  switch (node.kind) {
    case NodeKind::kRoot: return "R";
    case NodeKind::kFacility: return "F" + std::to_string(node.index);
    case NodeKind::kCentralOffice: return "C" + std::to_string(node.index);
    case NodeKind::kSteiner: return "S" + std::to_string(node.index);
  }
  return "?";
}

std::optional<CoreNode> ParseCoreNode(const std::string& name) {
  if (name == "R") return CoreNode{NodeKind::kRoot, 0};
  if (name.size() < 2) return std::nullopt;
  NodeKind kind;
  switch (name[0]) {
    case 'F': kind = NodeKind::kFacility; break;
    case 'C': kind = NodeKind::kCentralOffice; break;
    case 'S': kind = NodeKind::kSteiner; break;
    default: return std::nullopt;
  }
  int index = 0;
  for (size_t i = 1; i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9') return std::nullopt;
    if (index > 100000000) return std::nullopt;
    index = index * 10 + (name[i] - '0');
  }
  if (name.size() > 2 && name[1] == '0') return std::nullopt;
  return CoreNode{kind, index};
}

double Instance::total_weight() const {
  double total = 0.0;
  for (const User& u : users) total += u.weight;
  return total;
}

double Instance::PotentialWeight(int facility, int tech) const {
  double total = 0.0;
  for (const AssignmentArc& arc : assignment_arcs[tech]) {
    if (arc.facility == facility) total += users[arc.user].weight;
  }
  return total;
}

std::vector<int> Instance::ReachableUsers(int facility, int tech) const {
  std::set<int> reach;
  for (const AssignmentArc& arc : assignment_arcs[tech]) {
    if (arc.facility == facility) reach.insert(arc.user);
  }
  return {reach.begin(), reach.end()};
}

namespace {

[[noreturn]] void Invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidInstance, "invalid instance: " + what);
}

void CheckCost(double value, const std::string& where) {
  if (!std::isfinite(value) || value < 0.0) {
    Invalid(where + " must be finite and >= 0");
  }
}

void CheckNode(const Instance& inst, CoreNode node, const std::string& where) {
  int limit = 0;
  switch (node.kind) {
    case NodeKind::kRoot: Invalid(where + " may not reference the root");
    case NodeKind::kFacility: limit = inst.num_facilities(); break;
    case NodeKind::kCentralOffice: limit = inst.num_central_offices(); break;
    case NodeKind::kSteiner:
      limit = static_cast<int>(inst.steiner_nodes.size());
      break;
  }
  if (node.index < 0 || node.index >= limit) {
    Invalid(where + " references unknown node " + CoreNodeName(node));
  }
}

}  // namespace

void ValidateInstance(const Instance& inst) {
  for (int i = 0; i < inst.num_users(); ++i) {
    const User& u = inst.users[i];
    const std::string where = "users[" + std::to_string(i) + "]";
    if (u.id != i) Invalid(where + ".id must equal its position");
    CheckCost(u.weight, where + ".weight");
  }
  for (int i = 0; i < inst.num_facilities(); ++i) {
    const Facility& f = inst.facilities[i];
    const std::string where = "facilities[" + std::to_string(i) + "]";
    if (f.id != i) Invalid(where + ".id must equal its position");
    for (int t = 0; t < kNumTechnologies; ++t) {
      CheckCost(f.open_cost[t],
                where + ".open_cost[" + std::to_string(t) + "]");
    }
  }
  for (int i = 0; i < inst.num_central_offices(); ++i) {
    const CentralOffice& c = inst.central_offices[i];
    const std::string where = "central_offices[" + std::to_string(i) + "]";
    if (c.id != i) Invalid(where + ".id must equal its position");
    CheckCost(c.open_cost, where + ".open_cost");
  }
  for (size_t i = 0; i < inst.steiner_nodes.size(); ++i) {
    if (inst.steiner_nodes[i].id != static_cast<int>(i)) {
      Invalid("steiner_nodes[" + std::to_string(i) +
              "].id must equal its position");
    }
  }

  std::set<std::pair<CoreNode, CoreNode>> seen_arcs;
  for (size_t i = 0; i < inst.core_arcs.size(); ++i) {
    const CoreArc& a = inst.core_arcs[i];
    const std::string where = "core_arcs[" + std::to_string(i) + "]";
    CheckNode(inst, a.tail, where + ".tail");
    CheckNode(inst, a.head, where + ".head");
    if (a.tail == a.head) Invalid(where + " is a loop");
    if (!seen_arcs.insert({a.tail, a.head}).second) {
      Invalid(where + " duplicates " + CoreNodeName(a.tail) + "->" +
              CoreNodeName(a.head));
    }
    CheckCost(a.cost, where + ".cost");
  }

  for (int t = 0; t < kNumTechnologies; ++t) {
    std::set<std::pair<int, int>> seen;
    for (size_t i = 0; i < inst.assignment_arcs[t].size(); ++i) {
      const AssignmentArc& a = inst.assignment_arcs[t][i];
      const std::string where = "assignment_arcs[" + std::to_string(t) +
                                "][" + std::to_string(i) + "]";
      if (a.facility < 0 || a.facility >= inst.num_facilities()) {
        Invalid(where + ".facility out of range");
      }
      if (a.user < 0 || a.user >= inst.num_users()) {
        Invalid(where + ".user out of range");
      }
      if (!seen.insert({a.facility, a.user}).second) {
        Invalid(where + " duplicates facility " + std::to_string(a.facility) +
                " -> user " + std::to_string(a.user));
      }
      CheckCost(a.cost, where + ".cost");
    }
  }

  const double total = inst.total_weight();
  for (int t = 0; t < kNumTechnologies; ++t) {
    const double w = inst.coverage[t];
    const std::string where = "coverage_thresholds[" + std::to_string(t) + "]";
    if (!std::isfinite(w) || w < 0.0) Invalid(where + " must be >= 0");
    if (w > total + 1e-9 * std::max(1.0, total)) {
      Invalid(where + " exceeds the total user weight " +
              std::to_string(total));
    }
  }
  if (inst.coverage[0] > inst.coverage[1]) {
    Invalid("coverage threshold of technology 1 exceeds technology 2");
  }

  if (inst.wireless) {
    const WirelessParams& w = *inst.wireless;
    if (!(w.p_min >= 0.0) || !(w.p_min <= w.p_max) || !std::isfinite(w.p_max)) {
      Invalid("wireless power bounds must satisfy 0 <= p_min <= p_max");
    }
    if (!(w.delta > 0.0) || !std::isfinite(w.delta)) {
      Invalid("wireless.delta must be > 0");
    }
    if (!(w.noise > 0.0) || !std::isfinite(w.noise)) {
      Invalid("wireless.noise must be > 0");
    }
    if (static_cast<int>(w.fading.size()) != inst.num_facilities()) {
      Invalid("wireless.fading must have one row per facility");
    }
    for (int f = 0; f < inst.num_facilities(); ++f) {
      if (static_cast<int>(w.fading[f].size()) != inst.num_users()) {
        Invalid("wireless.fading[" + std::to_string(f) +
                "] must have one entry per user");
      }
      for (int u = 0; u < inst.num_users(); ++u) {
        const double a = w.fading[f][u];
        if (!(a >= 0.0 && a <= 1.0)) {
          Invalid("wireless.fading[" + std::to_string(f) + "][" +
                  std::to_string(u) + "] = " + std::to_string(a) +
                  " is outside [0, 1]");
        }
      }
    }
  }
}

}  // namespace confl3
