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
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "confl3/confl_model.hpp"
#include "confl3/error.hpp"

namespace confl3 {
namespace {

// A SIR row may be violated by up to the solver's feasibility tolerance, so
// a link is only declared blocked when it fails by more than that.
constexpr double kBlockMargin = 1e-6;

void RequireWireless(const Instance& inst) {
  if (!inst.wireless) {
    throw Error(ErrorCode::kMissingWireless,
                "interference analysis needs the wireless parameter block");
  }
}

// Half-plane a p1 + b p2 >= c.
struct HalfPlane {
  double a;
  double b;
  double c;
  double Slack(double p1, double p2) const { return a * p1 + b * p2 - c; }
};

// Exact feasibility of two half-planes inside the square [lo, hi]^2: a
// nonempty region is a polygon, so one of its vertices lies among the box
// corners, the line/edge crossings or the line/line crossing.
bool FeasibleInBox(const std::array<HalfPlane, 2>& planes, double lo,
                   double hi) {
  const double tol = 1e-12 * std::max(1.0, hi);
  std::vector<std::array<double, 2>> points;
  for (double p1 : {lo, hi}) {
    for (double p2 : {lo, hi}) points.push_back({p1, p2});
  }
  for (const HalfPlane& h : planes) {
    for (double edge : {lo, hi}) {
      if (h.b != 0.0) points.push_back({edge, (h.c - h.a * edge) / h.b});
      if (h.a != 0.0) points.push_back({(h.c - h.b * edge) / h.a, edge});
    }
  }
  const HalfPlane& g = planes[0];
  const HalfPlane& k = planes[1];
  const double det = g.a * k.b - g.b * k.a;
  if (det != 0.0) {
    points.push_back({(g.c * k.b - g.b * k.c) / det,
                      (g.a * k.c - g.c * k.a) / det});
  }
  for (const auto& pt : points) {
    if (!std::isfinite(pt[0]) || !std::isfinite(pt[1])) continue;
    if (pt[0] < lo - tol || pt[0] > hi + tol) continue;
    if (pt[1] < lo - tol || pt[1] > hi + tol) continue;
    const double p1 = std::clamp(pt[0], lo, hi);
    const double p2 = std::clamp(pt[1], lo, hi);
    if (g.Slack(p1, p2) >= -tol && k.Slack(p1, p2) >= -tol) return true;
  }
  return false;
}

std::string Link(int f, int u) {
  return "f" + std::to_string(f) + ",u" + std::to_string(u);
}

}  // namespace

std::set<int> Superinterferers(const Instance& inst, int user, int facility) {
  RequireWireless(inst);
  const WirelessParams& w = *inst.wireless;
  const double best_signal = inst.fading(facility, user) * w.p_max;
  std::set<int> out;
  for (int k = 0; k < inst.num_facilities(); ++k) {
    if (k == facility) continue;
    const double slack =
        best_signal - w.delta * inst.fading(k, user) * w.p_min - w.delta * w.noise;
    if (slack < -kBlockMargin) out.insert(k);
  }
  return out;
}

std::set<std::pair<ServicePair, ServicePair>> ConflictPairs(
    const Instance& inst) {
  RequireWireless(inst);
  const WirelessParams& w = *inst.wireless;
  const auto& arcs = inst.assignment_arcs[kWireless];
  const double rhs = w.delta * w.noise - kBlockMargin;
  std::set<std::pair<ServicePair, ServicePair>> out;
  for (size_t i = 0; i < arcs.size(); ++i) {
    for (size_t j = i + 1; j < arcs.size(); ++j) {
      const int f1 = arcs[i].facility;
      const int u1 = arcs[i].user;
      const int f2 = arcs[j].facility;
      const int u2 = arcs[j].user;
      if (f1 == f2) continue;
      const std::array<HalfPlane, 2> planes{
          HalfPlane{inst.fading(f1, u1), -w.delta * inst.fading(f2, u1), rhs},
          HalfPlane{-w.delta * inst.fading(f1, u2), inst.fading(f2, u2), rhs}};
      if (FeasibleInBox(planes, w.p_min, w.p_max)) continue;
      ServicePair a{f1, u1};
      ServicePair b{f2, u2};
      if (b < a) std::swap(a, b);
      out.insert({a, b});
    }
  }
  return out;
}

ConflModel Strengthen(ConflModel confl, const Instance& inst) {
  if (confl.num_techs != kNumTechnologies) {
    throw Error(ErrorCode::kContractViolation,
                "strengthening applies to the wireless formulation only");
  }
  Model& m = confl.model;
  for (size_t k = 0; k < inst.assignment_arcs[kWireless].size(); ++k) {
    const AssignmentArc& arc = inst.assignment_arcs[kWireless][k];
    for (int blocker : Superinterferers(inst, arc.user, arc.facility)) {
      m.AddConstraint({{{confl.y[kWireless][k], 1.0},
                        {confl.z[blocker][kWireless], 1.0}},
                       Sense::kLessEqual,
                       1.0,
                       "SUPER(" + Link(arc.facility, arc.user) + ",f" +
                           std::to_string(blocker) + ")"});
      ++confl.superinterferer_rows;
    }
  }
  for (const auto& [a, b] : ConflictPairs(inst)) {
    m.AddConstraint({{{confl.AssignmentVar(a.facility, a.user, kWireless), 1.0},
                      {confl.AssignmentVar(b.facility, b.user, kWireless), 1.0}},
                     Sense::kLessEqual,
                     1.0,
                     "CONF(" + Link(a.facility, a.user) + "," +
                         Link(b.facility, b.user) + ")"});
    ++confl.conflict_rows;
  }
  return confl;
}

}  // namespace confl3
