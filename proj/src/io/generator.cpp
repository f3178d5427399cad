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
#include <utility>

#include "confl3/error.hpp"
#include "confl3/instance_io.hpp"
#include "confl3/random.hpp"

namespace confl3 {
namespace {

double Distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

[[noreturn]] void BadParam(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, "generator parameter " + what);
}

void CheckRange(const CostRange& r, const std::string& name) {
  if (!(r.lo >= 0.0) || !(r.lo <= r.hi) || !std::isfinite(r.hi)) {
    BadParam(name + " must satisfy 0 <= lo <= hi");
  }
}

Point CorePosition(const Instance& inst, CoreNode node) {
  switch (node.kind) {
    case NodeKind::kFacility: return inst.facilities[node.index].position;
    case NodeKind::kCentralOffice:
      return inst.central_offices[node.index].position;
    case NodeKind::kSteiner: return inst.steiner_nodes[node.index].position;
    case NodeKind::kRoot: break;
  }
  return {};
}

bool CoverageAttainable(const Instance& inst) {
  for (int t = 0; t < kNumTechnologies; ++t) {
    double potential = 0.0;
    for (int f = 0; f < inst.num_facilities(); ++f) {
      potential += inst.PotentialWeight(f, t);
    }
    if (potential < inst.coverage[t]) return false;
    std::set<int> reach;
    for (int tau = 0; tau <= t; ++tau) {
      for (const AssignmentArc& a : inst.assignment_arcs[tau]) reach.insert(a.user);
    }
    double reachable = 0.0;
    for (int u : reach) reachable += inst.users[u].weight;
    if (reachable < inst.coverage[t]) return false;
  }
  return true;
}

Instance Draw(const GeneratorParams& prm, Rng& rng) {
  Instance inst;
  for (int gy = 0; gy < prm.grid_height; ++gy) {
    for (int gx = 0; gx < prm.grid_width; ++gx) {
      for (int k = 0; k < prm.users_per_pixel; ++k) {
        const int id = inst.num_users();
        inst.users.push_back({id, prm.user_weight, {gx + 0.5, gy + 0.5}});
      }
    }
  }

  // Core nodes sit on distinct lattice points while enough of them exist.
  std::vector<Point> lattice;
  for (int gy = 0; gy <= prm.grid_height; ++gy) {
    for (int gx = 0; gx <= prm.grid_width; ++gx) {
      lattice.push_back({static_cast<double>(gx), static_cast<double>(gy)});
    }
  }
  int drawn = 0;
  auto next_point = [&]() {
    const int n = static_cast<int>(lattice.size());
    const int slot = drawn % n;
    const int pick = slot + rng.Index(n - slot);
    std::swap(lattice[slot], lattice[pick]);
    ++drawn;
    return lattice[slot];
  };

  for (int f = 0; f < prm.n_facilities; ++f) {
    Facility fac{f, next_point(), {}};
    for (int t = 0; t < kNumTechnologies; ++t) {
      fac.open_cost[t] =
          rng.Uniform(prm.facility_cost[t].lo, prm.facility_cost[t].hi);
    }
    inst.facilities.push_back(fac);
  }
  for (int c = 0; c < prm.n_central_offices; ++c) {
    const Point pos = next_point();
    inst.central_offices.push_back(
        {c, pos,
         rng.Uniform(prm.central_office_cost.lo, prm.central_office_cost.hi)});
  }
  for (int s = 0; s < prm.n_steiner; ++s) {
    inst.steiner_nodes.push_back({s, next_point()});
  }

  std::vector<CoreNode> core;
  for (int f = 0; f < prm.n_facilities; ++f) core.push_back({NodeKind::kFacility, f});
  for (int c = 0; c < prm.n_central_offices; ++c) {
    core.push_back({NodeKind::kCentralOffice, c});
  }
  for (int s = 0; s < prm.n_steiner; ++s) core.push_back({NodeKind::kSteiner, s});

  std::set<std::pair<CoreNode, CoreNode>> links;
  for (const CoreNode& a : core) {
    std::vector<std::pair<double, CoreNode>> near;
    for (const CoreNode& b : core) {
      if (a == b) continue;
      near.push_back({Distance(CorePosition(inst, a), CorePosition(inst, b)), b});
    }
    std::sort(near.begin(), near.end());
    const int k = std::min<int>(prm.k_nearest, static_cast<int>(near.size()));
    for (int i = 0; i < k; ++i) {
      links.insert({a, near[i].second});
      links.insert({near[i].second, a});
    }
  }
  for (int f = 0; f < prm.n_facilities; ++f) {
    const Point pf = inst.facilities[f].position;
    int best = 0;
    for (int c = 1; c < prm.n_central_offices; ++c) {
      if (Distance(inst.central_offices[c].position, pf) <
          Distance(inst.central_offices[best].position, pf)) {
        best = c;
      }
    }
    links.insert({{NodeKind::kCentralOffice, best}, {NodeKind::kFacility, f}});
  }
  for (const auto& [tail, head] : links) {
    const double d = Distance(CorePosition(inst, tail), CorePosition(inst, head));
    inst.core_arcs.push_back({tail, head, prm.core_cost_per_unit * d});
  }

  for (int t = 0; t < kNumTechnologies; ++t) {
    const CostRange& range = prm.assignment_cost[t];
    for (int f = 0; f < prm.n_facilities; ++f) {
      const Point pf = inst.facilities[f].position;
      int nearest = 0;
      bool any = false;
      for (int u = 0; u < inst.num_users(); ++u) {
        const double d = Distance(pf, inst.users[u].position);
        if (d < Distance(pf, inst.users[nearest].position)) nearest = u;
        if (d > prm.radius[t]) continue;
        any = true;
        const double factor = rng.Uniform(range.lo, range.hi);
        inst.assignment_arcs[t].push_back(
            {f, u, t == kWireless ? factor : factor * d});
      }
      if (!any && prm.ensure_reach && inst.num_users() > 0) {
        const double d = Distance(pf, inst.users[nearest].position);
        const double factor = rng.Uniform(range.lo, range.hi);
        inst.assignment_arcs[t].push_back(
            {f, nearest, t == kWireless ? factor : factor * d});
      }
    }
  }

  const double total = inst.total_weight();
  for (int t = 0; t < kNumTechnologies; ++t) {
    inst.coverage[t] = prm.coverage_fraction[t] * total;
  }

  WirelessParams w;
  w.p_min = prm.p_min;
  w.p_max = prm.p_max;
  w.delta = prm.delta;
  w.noise = prm.noise;
  w.fading.assign(prm.n_facilities, std::vector<double>(inst.num_users()));
  for (int f = 0; f < prm.n_facilities; ++f) {
    for (int u = 0; u < inst.num_users(); ++u) {
      w.fading[f][u] = PathLossFading(
          Distance(inst.facilities[f].position, inst.users[u].position),
          prm.reference_distance, prm.path_loss_exponent);
    }
  }
  inst.wireless = std::move(w);
  return inst;
}

}  // namespace

double PathLossFading(double distance, double reference_distance,
                      double exponent) {
  if (distance <= reference_distance) return 1.0;
  return std::min(1.0, std::pow(reference_distance / distance, exponent));
}

void ValidateGeneratorParams(const GeneratorParams& p) {
  if (p.grid_width < 1 || p.grid_height < 1) BadParam("grid must be at least 1x1");
  if (p.n_facilities < 1) BadParam("n_facilities must be >= 1");
  if (p.n_central_offices < 1) BadParam("n_central_offices must be >= 1");
  if (p.n_steiner < 0) BadParam("n_steiner must be >= 0");
  if (p.users_per_pixel < 1) BadParam("users_per_pixel must be >= 1");
  if (!(p.user_weight >= 0.0) || !std::isfinite(p.user_weight)) {
    BadParam("user_weight must be >= 0");
  }
  if (p.k_nearest < 0) BadParam("k_nearest must be >= 0");
  if (!(p.core_cost_per_unit >= 0.0)) BadParam("core_cost_per_unit must be >= 0");
  for (int t = 0; t < kNumTechnologies; ++t) {
    const std::string idx = "[" + std::to_string(t) + "]";
    if (!(p.radius[t] >= 0.0)) BadParam("radius" + idx + " must be >= 0");
    if (!(p.coverage_fraction[t] >= 0.0 && p.coverage_fraction[t] <= 1.0)) {
      BadParam("coverage_fraction" + idx + " must lie in [0, 1]");
    }
    CheckRange(p.facility_cost[t], "facility_cost" + idx);
    CheckRange(p.assignment_cost[t], "assignment_cost" + idx);
  }
  if (p.coverage_fraction[0] > p.coverage_fraction[1]) {
    BadParam("coverage_fraction[0] must not exceed coverage_fraction[1]");
  }
  CheckRange(p.central_office_cost, "central_office_cost");
  if (!(p.p_min >= 0.0 && p.p_min <= p.p_max)) {
    BadParam("power bounds must satisfy 0 <= p_min <= p_max");
  }
  if (!(p.delta > 0.0)) BadParam("delta must be > 0");
  if (!(p.noise > 0.0)) BadParam("noise must be > 0");
  if (!(p.path_loss_exponent > 0.0)) BadParam("path_loss_exponent must be > 0");
  if (!(p.reference_distance > 0.0)) BadParam("reference_distance must be > 0");
  if (p.max_retries < 1) BadParam("max_retries must be >= 1");
}

Instance Generate(const GeneratorParams& params, uint64_t seed) {
  ValidateGeneratorParams(params);
  Rng rng(seed);
  for (int attempt = 0; attempt < params.max_retries; ++attempt) {
    Instance inst = Draw(params, rng);
    if (!CoverageAttainable(inst)) continue;
    inst.name = "grid" + std::to_string(params.grid_width) + "x" +
                std::to_string(params.grid_height) + "-seed" +
                std::to_string(seed);
    ValidateInstance(inst);
    return inst;
  }
  throw Error(ErrorCode::kUnattainableCoverage,
              "no draw made every coverage threshold attainable after " +
                  std::to_string(params.max_retries) +
                  " attempts; widen the radii or lower the coverage fractions");
}

}  // namespace confl3
