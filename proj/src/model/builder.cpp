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

#include <map>
#include <string>

#include "confl3/confl_model.hpp"
#include "confl3/error.hpp"

namespace confl3 {

VarId ConflModel::AssignmentVar(int facility, int user, int tech) const {
  const auto it = assignment_index.find({facility, user, tech});
  return it == assignment_index.end() ? VarId{} : it->second;
}

std::vector<VarId> ConflModel::OpeningVars() const {
  std::vector<VarId> out;
  for (const auto& row : z) {
    for (int t = 0; t < num_techs; ++t) out.push_back(row[t]);
  }
  return out;
}

namespace {

std::string Idx(const char* prefix, int i) {
  return prefix + std::to_string(i);
}

std::string TechName(int t) { return "t" + std::to_string(t + 1); }

ConflModel BuildCommon(const Instance& inst, int num_techs) {
  ValidateInstance(inst);
  ConflModel out;
  out.num_techs = num_techs;
  Model& m = out.model;
  const int nf = inst.num_facilities();
  const int nu = inst.num_users();

  for (int c = 0; c < inst.num_central_offices(); ++c) {
    out.arcs.push_back({CoreNode{NodeKind::kRoot, 0},
                        CoreNode{NodeKind::kCentralOffice, c},
                        inst.central_offices[c].open_cost});
  }
  out.num_root_arcs = static_cast<int>(out.arcs.size());
  for (const CoreArc& a : inst.core_arcs) {
    out.arcs.push_back({a.tail, a.head, a.cost});
  }
  const int na = static_cast<int>(out.arcs.size());

  // Variables, family by family.
  out.z.resize(nf);
  for (int f = 0; f < nf; ++f) {
    for (int t = 0; t < num_techs; ++t) {
      out.z[f][t] = m.AddVariable("z_" + Idx("f", f) + "_" + TechName(t),
                                  VarKind::kBinary, 0, 1);
      m.SetObjectiveCoefficient(out.z[f][t], inst.facilities[f].open_cost[t]);
    }
  }
  out.x.resize(na);
  for (int a = 0; a < na; ++a) {
    out.x[a] = m.AddVariable("x_" + CoreNodeName(out.arcs[a].tail) + "_" +
                                 CoreNodeName(out.arcs[a].head),
                             VarKind::kBinary, 0, 1);
    m.SetObjectiveCoefficient(out.x[a], out.arcs[a].cost);
  }
  for (int t = 0; t < num_techs; ++t) {
    for (const AssignmentArc& arc : inst.assignment_arcs[t]) {
      const VarId y = m.AddVariable("y_" + Idx("f", arc.facility) + "_" +
                                        Idx("u", arc.user) + "_" + TechName(t),
                                    VarKind::kBinary, 0, 1);
      m.SetObjectiveCoefficient(y, arc.cost);
      out.y[t].push_back(y);
      out.assignment_index[{arc.facility, arc.user, t}] = y;
    }
  }
  out.v.resize(nu);
  for (int u = 0; u < nu; ++u) {
    for (int t = 0; t < num_techs; ++t) {
      out.v[u][t] = m.AddVariable("v_" + Idx("u", u) + "_" + TechName(t),
                                  VarKind::kBinary, 0, 1);
    }
  }
  out.phi.assign(na, std::vector<VarId>(nf));
  for (int a = 0; a < na; ++a) {
    for (int f = 0; f < nf; ++f) {
      out.phi[a][f] = m.AddVariable(
          "phi_" + CoreNodeName(out.arcs[a].tail) + "_" +
              CoreNodeName(out.arcs[a].head) + "_" + Idx("f", f),
          VarKind::kContinuous, 0, kInfinity);
    }
  }

  // At most one technology per facility.
  for (int f = 0; f < nf; ++f) {
    LinearConstraint row{{}, Sense::kLessEqual, 1.0, "ONETECH(" + Idx("f", f) + ")"};
    for (int t = 0; t < num_techs; ++t) row.terms.push_back({out.z[f][t], 1.0});
    m.AddConstraint(row);
  }

  // A served user uses exactly one arc of that technology.
  for (int u = 0; u < nu; ++u) {
    for (int t = 0; t < num_techs; ++t) {
      LinearConstraint row{{}, Sense::kEqual, 0.0,
                           "ASSIGN(" + Idx("u", u) + "," + TechName(t) + ")"};
      for (size_t k = 0; k < inst.assignment_arcs[t].size(); ++k) {
        if (inst.assignment_arcs[t][k].user == u) {
          row.terms.push_back({out.y[t][k], 1.0});
        }
      }
      row.terms.push_back({out.v[u][t], -1.0});
      m.AddConstraint(row);
    }
  }

  for (int t = 0; t < num_techs; ++t) {
    for (size_t k = 0; k < inst.assignment_arcs[t].size(); ++k) {
      const AssignmentArc& arc = inst.assignment_arcs[t][k];
      m.AddConstraint({{{out.y[t][k], 1.0}, {out.z[arc.facility][t], -1.0}},
                       Sense::kLessEqual,
                       0.0,
                       "LINK(" + Idx("f", arc.facility) + "," +
                           Idx("u", arc.user) + "," + TechName(t) + ")"});
    }
  }

  // Users on a better technology count towards the worse ones.
  for (int t = 0; t < num_techs; ++t) {
    LinearConstraint row{{}, Sense::kGreaterEqual, inst.coverage[t],
                         "COVER(" + TechName(t) + ")"};
    for (int u = 0; u < nu; ++u) {
      if (inst.users[u].weight == 0.0) continue;
      for (int tau = 0; tau <= t; ++tau) {
        row.terms.push_back({out.v[u][tau], inst.users[u].weight});
      }
    }
    m.AddConstraint(row);
  }

  // One commodity per facility, shipped from the root to the facility
  // whenever it is open on any technology.
  std::map<CoreNode, std::vector<int>> in_arcs;
  std::map<CoreNode, std::vector<int>> out_arcs;
  for (int a = 0; a < na; ++a) {
    out_arcs[out.arcs[a].tail].push_back(a);
    in_arcs[out.arcs[a].head].push_back(a);
  }
  std::vector<CoreNode> nodes{CoreNode{NodeKind::kRoot, 0}};
  for (int f = 0; f < nf; ++f) nodes.push_back({NodeKind::kFacility, f});
  for (int c = 0; c < inst.num_central_offices(); ++c) {
    nodes.push_back({NodeKind::kCentralOffice, c});
  }
  for (size_t s = 0; s < inst.steiner_nodes.size(); ++s) {
    nodes.push_back({NodeKind::kSteiner, static_cast<int>(s)});
  }
  for (int f = 0; f < nf; ++f) {
    const CoreNode sink{NodeKind::kFacility, f};
    for (const CoreNode& node : nodes) {
      LinearConstraint row{{}, Sense::kEqual, 0.0,
                           "FLOW(" + CoreNodeName(node) + "," + Idx("f", f) + ")"};
      for (int a : in_arcs[node]) row.terms.push_back({out.phi[a][f], 1.0});
      for (int a : out_arcs[node]) row.terms.push_back({out.phi[a][f], -1.0});
      double sign = 0.0;
      if (node.kind == NodeKind::kRoot) sign = 1.0;
      if (node == sink) sign = -1.0;
      if (sign != 0.0) {
        for (int t = 0; t < num_techs; ++t) {
          row.terms.push_back({out.z[f][t], sign});
        }
      }
      if (row.terms.empty()) continue;
      m.AddConstraint(row);
    }
  }

  for (int a = 0; a < na; ++a) {
    for (int f = 0; f < nf; ++f) {
      m.AddConstraint({{{out.phi[a][f], 1.0}, {out.x[a], -1.0}},
                       Sense::kLessEqual,
                       0.0,
                       "CAP(" + CoreNodeName(out.arcs[a].tail) + "," +
                           CoreNodeName(out.arcs[a].head) + "," + Idx("f", f) +
                           ")"});
    }
  }
  return out;
}

}  // namespace

ConflModel Build2Confl(const Instance& instance) {
  return BuildCommon(instance, 2);
}

double BigM(const Instance& inst, int facility, int user) {
  const WirelessParams& w = *inst.wireless;
  double interference = 0.0;
  for (int k = 0; k < inst.num_facilities(); ++k) {
    if (k != facility) interference += inst.fading(k, user) * w.p_max;
  }
  return w.delta * w.noise + w.delta * interference;
}

ConflModel Build3Confl(const Instance& inst) {
  if (!inst.wireless) {
    throw Error(ErrorCode::kMissingWireless,
                "the wireless formulation needs the wireless parameter block");
  }
  ConflModel out = BuildCommon(inst, 3);
  Model& m = out.model;
  const WirelessParams& w = *inst.wireless;
  const int nf = inst.num_facilities();

  out.p.resize(nf);
  for (int f = 0; f < nf; ++f) {
    out.p[f] = m.AddVariable(Idx("p_f", f), VarKind::kContinuous, 0.0, w.p_max);
  }
  for (int f = 0; f < nf; ++f) {
    const VarId z3 = out.z[f][kWireless];
    m.AddConstraint({{{out.p[f], 1.0}, {z3, -w.p_min}},
                     Sense::kGreaterEqual, 0.0, "PMIN(" + Idx("f", f) + ")"});
    m.AddConstraint({{{out.p[f], 1.0}, {z3, -w.p_max}},
                     Sense::kLessEqual, 0.0, "PMAX(" + Idx("f", f) + ")"});
  }

  // a_fu p_f - delta sum_k a_ku p_k >= delta noise - M (1 - y_fu)
  for (size_t k = 0; k < inst.assignment_arcs[kWireless].size(); ++k) {
    const AssignmentArc& arc = inst.assignment_arcs[kWireless][k];
    const int f = arc.facility;
    const int u = arc.user;
    const double big_m = BigM(inst, f, u);
    LinearConstraint row{{}, Sense::kGreaterEqual, w.delta * w.noise - big_m,
                         "SIR(" + Idx("f", f) + "," + Idx("u", u) + ")"};
    for (int j = 0; j < nf; ++j) {
      const double coef =
          j == f ? inst.fading(f, u) : -w.delta * inst.fading(j, u);
      if (coef != 0.0) row.terms.push_back({out.p[j], coef});
    }
    row.terms.push_back({out.y[kWireless][k], -big_m});
    m.AddConstraint(row);
  }
  return out;
}

}  // namespace confl3
