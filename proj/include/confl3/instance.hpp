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

// Problem data for the 3-architecture connected facility location problem.
//
// Technologies are indexed 0, 1, 2 internally and 1, 2, 3 in names and
// files: fiber to the home, copper-terminated fiber, wireless.

#ifndef CONFL3_INSTANCE_HPP_
#define CONFL3_INSTANCE_HPP_

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace confl3 {

inline constexpr int kNumTechnologies = 3;
inline constexpr int kFiber = 0;
inline constexpr int kCopper = 1;
inline constexpr int kWireless = 2;

// Kinds of nodes in the core graph (plus the artificial root).
enum class NodeKind { kRoot, kFacility, kCentralOffice, kSteiner };

struct CoreNode {
  NodeKind kind = NodeKind::kRoot;
  int index = 0;
  auto operator<=>(const CoreNode&) const = default;
};

// "F3", "C0", "S1", "R".
std::string CoreNodeName(CoreNode node);
std::optional<CoreNode> ParseCoreNode(const std::string& name);

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

struct User {
  int id = 0;
  double weight = 1.0;
  Point position;
  bool operator==(const User&) const = default;
};

struct Facility {
  int id = 0;
  Point position;
  std::array<double, kNumTechnologies> open_cost{};
  bool operator==(const Facility&) const = default;
};

struct CentralOffice {
  int id = 0;
  Point position;
  double open_cost = 0.0;
  bool operator==(const CentralOffice&) const = default;
};

struct SteinerNode {
  int id = 0;
  Point position;
  bool operator==(const SteinerNode&) const = default;
};

struct CoreArc {
  CoreNode tail;
  CoreNode head;
  double cost = 0.0;
  bool operator==(const CoreArc&) const = default;
};

struct AssignmentArc {
  int facility = 0;
  int user = 0;
  double cost = 0.0;
  bool operator==(const AssignmentArc&) const = default;
};

struct WirelessParams {
  double p_min = 0.1;
  double p_max = 1.0;
  double delta = 2.0;  // SIR threshold, linear scale
  double noise = 0.05;
  // fading[f][u] in [0, 1]
  std::vector<std::vector<double>> fading;
  bool operator==(const WirelessParams&) const = default;
};

struct Instance {
  std::string name;
  std::vector<User> users;
  std::vector<Facility> facilities;
  std::vector<CentralOffice> central_offices;
  std::vector<SteinerNode> steiner_nodes;
  std::vector<CoreArc> core_arcs;
  std::array<std::vector<AssignmentArc>, kNumTechnologies> assignment_arcs;
  std::array<double, kNumTechnologies> coverage{};  // W_t
  std::optional<WirelessParams> wireless;

  bool operator==(const Instance&) const = default;

  int num_users() const { return static_cast<int>(users.size()); }
  int num_facilities() const { return static_cast<int>(facilities.size()); }
  int num_central_offices() const {
    return static_cast<int>(central_offices.size());
  }
  double total_weight() const;

  // W^POT_ft: weight of the users facility f can reach on technology t.
  double PotentialWeight(int facility, int tech) const;

  // Users reachable from facility f on technology t (U_f^t), ascending.
  std::vector<int> ReachableUsers(int facility, int tech) const;

  double fading(int facility, int user) const {
    return wireless->fading[facility][user];
  }
};

// Throws Error(kInvalidInstance) naming the first violated invariant.
void ValidateInstance(const Instance& instance);

}  // namespace confl3

#endif  // CONFL3_INSTANCE_HPP_
