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

#include <cmath>
#include <cstdio>
#include <map>
#include <string>

#include "confl3/confl_model.hpp"
#include "confl3/error.hpp"

namespace confl3 {

bool VerificationReport::feasible() const {
  return domain.empty() && single_tech.empty() && assignment.empty() &&
         linking.empty() && coverage.empty() && flow.empty() &&
         capacity.empty() && sir.empty() && power_bounds.empty();
}

std::vector<std::string> VerificationReport::Summary() const {
  std::vector<std::string> out;
  auto add = [&](const char* family, const std::vector<std::string>& items) {
    for (const std::string& s : items) out.push_back(std::string(family) + ": " + s);
  };
  add("domain", domain);
  add("single-tech", single_tech);
  add("assignment", assignment);
  add("linking", linking);
  add("coverage", coverage);
  add("flow", flow);
  add("capacity", capacity);
  add("sir", sir);
  add("power-bounds", power_bounds);
  return out;
}

namespace {

std::string Num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string T(int t) { return "t" + std::to_string(t + 1); }

}  // namespace

VerificationReport VerifySolution(const Instance& inst, const ConflModel& confl,
                                  const Assignment& assignment) {
  if (!assignment.IsTotalFor(confl.model)) {
    throw Error(ErrorCode::kPartialAssignment,
                "verification needs a value for every model variable");
  }
  VerificationReport rep;
  const double tol = kFeasibilityTol;
  const int nf = inst.num_facilities();
  const int nu = inst.num_users();
  const int nt = confl.num_techs;
  auto val = [&](VarId id) { return assignment[id]; };

  auto check_binary = [&](VarId id, const std::string& what) {
    const double x = val(id);
    if (std::abs(x) > kIntegralityTol && std::abs(x - 1.0) > kIntegralityTol) {
      rep.domain.push_back(what + " = " + Num(x) + " is not binary");
    }
  };

  // Binary families, read through the index maps.
  double objective = 0.0;
  for (int f = 0; f < nf; ++f) {
    double opened = 0.0;
    for (int t = 0; t < nt; ++t) {
      const std::string name =
          "z(f" + std::to_string(f) + "," + T(t) + ")";
      check_binary(confl.z[f][t], name);
      opened += val(confl.z[f][t]);
      objective += inst.facilities[f].open_cost[t] * val(confl.z[f][t]);
    }
    if (opened > 1.0 + tol) {
      rep.single_tech.push_back("facility f" + std::to_string(f) +
                                " opened on " + Num(opened) + " technologies");
    }
  }

  for (int c = 0; c < inst.num_central_offices(); ++c) {
    objective += inst.central_offices[c].open_cost * val(confl.x[c]);
  }
  for (size_t a = 0; a < inst.core_arcs.size(); ++a) {
    objective += inst.core_arcs[a].cost * val(confl.x[confl.num_root_arcs + a]);
  }
  for (size_t a = 0; a < confl.x.size(); ++a) {
    check_binary(confl.x[a], "x(" + CoreNodeName(confl.arcs[a].tail) + "," +
                                 CoreNodeName(confl.arcs[a].head) + ")");
  }

  for (int u = 0; u < nu; ++u) {
    for (int t = 0; t < nt; ++t) {
      check_binary(confl.v[u][t], "v(u" + std::to_string(u) + "," + T(t) + ")");
    }
  }

  std::vector<std::vector<double>> served(nu, std::vector<double>(nt, 0.0));
  for (int t = 0; t < nt; ++t) {
    for (const AssignmentArc& arc : inst.assignment_arcs[t]) {
      const VarId y = confl.AssignmentVar(arc.facility, arc.user, t);
      const std::string name = "y(f" + std::to_string(arc.facility) + ",u" +
                               std::to_string(arc.user) + "," + T(t) + ")";
      check_binary(y, name);
      objective += arc.cost * val(y);
      served[arc.user][t] += val(y);
      if (val(y) > val(confl.z[arc.facility][t]) + tol) {
        rep.linking.push_back(name + " is used but the facility is closed");
      }
    }
  }
  for (int u = 0; u < nu; ++u) {
    for (int t = 0; t < nt; ++t) {
      if (std::abs(served[u][t] - val(confl.v[u][t])) > tol) {
        rep.assignment.push_back("user u" + std::to_string(u) + " on " + T(t) +
                                 ": " + Num(served[u][t]) +
                                 " assignment arcs vs served flag " +
                                 Num(val(confl.v[u][t])));
      }
    }
  }

  for (int t = 0; t < nt; ++t) {
    double covered = 0.0;
    for (int u = 0; u < nu; ++u) {
      for (int tau = 0; tau <= t; ++tau) {
        covered += inst.users[u].weight * val(confl.v[u][tau]);
      }
    }
    if (covered < inst.coverage[t] - tol) {
      rep.coverage.push_back(T(t) + " covers weight " + Num(covered) +
                             " below the threshold " + Num(inst.coverage[t]));
    }
  }

  // Flow balance recomputed from the arc list rebuilt from the instance.
  std::vector<std::pair<CoreNode, CoreNode>> arcs;
  for (int c = 0; c < inst.num_central_offices(); ++c) {
    arcs.push_back({{NodeKind::kRoot, 0}, {NodeKind::kCentralOffice, c}});
  }
  for (const CoreArc& a : inst.core_arcs) arcs.push_back({a.tail, a.head});
  for (int f = 0; f < nf; ++f) {
    double opened = 0.0;
    for (int t = 0; t < nt; ++t) opened += val(confl.z[f][t]);
    std::map<CoreNode, double> balance;
    balance[{NodeKind::kRoot, 0}] = 0.0;
    balance[{NodeKind::kFacility, f}] = 0.0;
    for (size_t a = 0; a < arcs.size(); ++a) {
      const double flow = val(confl.phi[a][f]);
      balance[arcs[a].first] -= flow;
      balance[arcs[a].second] += flow;
      const std::string name = "phi(" + CoreNodeName(arcs[a].first) + "," +
                               CoreNodeName(arcs[a].second) + ",f" +
                               std::to_string(f) + ")";
      if (flow < -kFlowTolerance) {
        rep.capacity.push_back(name + " = " + Num(flow) + " is negative");
      }
      if (flow > val(confl.x[a]) + kFlowTolerance) {
        rep.capacity.push_back(name + " = " + Num(flow) +
                               " exceeds the arc activation " +
                               Num(val(confl.x[a])));
      }
    }
    for (const auto& [node, net] : balance) {
      double expected = 0.0;
      if (node.kind == NodeKind::kRoot) expected = -opened;
      if (node == CoreNode{NodeKind::kFacility, f}) expected = opened;
      if (std::abs(net - expected) > kFlowTolerance) {
        rep.flow.push_back("commodity f" + std::to_string(f) + " at " +
                           CoreNodeName(node) + ": net inflow " + Num(net) +
                           ", expected " + Num(expected));
      }
    }
  }

  if (nt == kNumTechnologies && inst.wireless) {
    const WirelessParams& w = *inst.wireless;
    for (int f = 0; f < nf; ++f) {
      const double p = val(confl.p[f]);
      const double z3 = val(confl.z[f][kWireless]);
      if (p < w.p_min * z3 - tol || p > w.p_max * z3 + tol) {
        rep.power_bounds.push_back("p(f" + std::to_string(f) + ") = " + Num(p) +
                                   " outside [" + Num(w.p_min * z3) + ", " +
                                   Num(w.p_max * z3) + "]");
      }
    }
    for (const AssignmentArc& arc : inst.assignment_arcs[kWireless]) {
      const VarId y = confl.AssignmentVar(arc.facility, arc.user, kWireless);
      if (val(y) < 0.5) continue;
      double interference = w.noise;
      for (int k = 0; k < nf; ++k) {
        if (k != arc.facility) {
          interference += inst.fading(k, arc.user) * val(confl.p[k]);
        }
      }
      const double ratio =
          inst.fading(arc.facility, arc.user) * val(confl.p[arc.facility]) /
          interference;
      if (ratio < w.delta - kSirTolerance) {
        rep.sir.push_back("user u" + std::to_string(arc.user) + " from f" +
                          std::to_string(arc.facility) + ": SIR " + Num(ratio) +
                          " below " + Num(w.delta));
      }
    }
  }
  rep.objective = objective;
  return rep;
}

}  // namespace confl3
