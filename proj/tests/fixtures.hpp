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

// Hand-built instances shared by the unit and acceptance suites.

#ifndef CONFL3_TESTS_FIXTURES_HPP_
#define CONFL3_TESTS_FIXTURES_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "confl3/confl_model.hpp"
#include "confl3/error.hpp"
#include "confl3/instance.hpp"
#include "confl3/instance_io.hpp"

namespace confl3::testing {

inline CoreNode Fac(int i) { return {NodeKind::kFacility, i}; }
inline CoreNode Office(int i) { return {NodeKind::kCentralOffice, i}; }

// Skeleton with `nf` facilities, one central office feeding each of them
// directly, and `nu` unit-weight users.
inline Instance Star(int nf, int nu, double office_cost = 10.0,
                     double arc_cost = 1.0) {
  Instance inst;
  inst.name = "star";
  for (int u = 0; u < nu; ++u) inst.users.push_back({u, 1.0, {double(u), 0.0}});
  for (int f = 0; f < nf; ++f) {
    inst.facilities.push_back({f, {double(f), 1.0}, {100.0, 100.0, 100.0}});
  }
  inst.central_offices.push_back({0, {0.0, 2.0}, office_cost});
  for (int f = 0; f < nf; ++f) inst.core_arcs.push_back({Office(0), Fac(f), arc_cost});
  return inst;
}

inline void SetWireless(Instance& inst, double p_min, double p_max, double delta,
                        double noise, double fading) {
  WirelessParams w;
  w.p_min = p_min;
  w.p_max = p_max;
  w.delta = delta;
  w.noise = noise;
  w.fading.assign(inst.num_facilities(),
                  std::vector<double>(inst.num_users(), fading));
  inst.wireless = w;
}

// One facility, one office, one user on fiber:
// office 5, facility 3, office->facility arc 2, assignment 1.
inline Instance SingleChain() {
  Instance inst = Star(1, 1, 5.0, 2.0);
  inst.facilities[0].open_cost = {3.0, 4.0, 6.0};
  inst.assignment_arcs[kFiber].push_back({0, 0, 1.0});
  inst.coverage = {1.0, 1.0, 0.0};
  return inst;
}

// Two wireless facilities serving two users with every fading at 0.5,
// delta 2, noise 0.1 and power in [0.1, 1]: serving both links at once is
// impossible. A third facility offers a pricier copper link to user 1 and
// radiates nothing towards either user.
inline Instance ConflictExample() {
  Instance inst = Star(3, 2);
  inst.facilities[0].open_cost = {100.0, 100.0, 5.0};
  inst.facilities[1].open_cost = {100.0, 100.0, 5.0};
  inst.facilities[2].open_cost = {100.0, 30.0, 100.0};
  inst.assignment_arcs[kWireless] = {{0, 0, 0.1}, {1, 1, 0.1}};
  inst.assignment_arcs[kCopper] = {{2, 1, 20.0}};
  inst.coverage = {0.0, 0.0, 2.0};
  SetWireless(inst, 0.1, 1.0, 2.0, 0.1, 0.5);
  inst.wireless->fading[2] = {0.0, 0.0};
  return inst;
}

// Opening facilities 0 and 1 together on wireless leaves user 1 without
// service: the pair conflicts and facility 1 alone jams the weaker
// facility 2. Closing facility 1 lets facility 2 take user 1.
inline Instance RepairExample() {
  Instance inst = Star(3, 2);
  for (Facility& f : inst.facilities) f.open_cost = {100.0, 100.0, 5.0};
  inst.assignment_arcs[kWireless] = {{0, 0, 0.1}, {1, 1, 0.1}, {2, 1, 0.1}};
  inst.coverage = {0.0, 0.0, 2.0};
  SetWireless(inst, 0.1, 1.0, 2.0, 0.1, 0.5);
  // fading[f][u]
  inst.wireless->fading = {{0.5, 0.05}, {0.5, 0.5}, {0.0, 0.25}};
  return inst;
}

// Two facilities and one user; facility 0 serves it wirelessly and
// facility 1 only interferes.
inline Instance TwoTransmitters(double serve_fading, double interferer_fading,
                                double p_min, double p_max, double delta,
                                double noise) {
  Instance inst = Star(2, 1);
  inst.facilities[0].open_cost = {100.0, 100.0, 5.0};
  inst.assignment_arcs[kWireless] = {{0, 0, 0.1}};
  inst.coverage = {0.0, 0.0, 1.0};
  SetWireless(inst, p_min, p_max, delta, noise, 0.0);
  inst.wireless->fading[0][0] = serve_fading;
  inst.wireless->fading[1][0] = interferer_fading;
  return inst;
}

inline int CountBinaries(const Instance& inst) {
  return Build3Confl(inst).model.num_binaries();
}

// Seeded tiny generated instances whose wireless formulation has at most
// `max_binaries` binaries. Shapes alternate between one facility and two
// users, two facilities and one user, and two of each.
inline std::vector<Instance> TinyInstances(int count, uint64_t seed,
                                           int max_binaries = 18) {
  std::vector<Instance> out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (uint64_t attempt = 0; static_cast<int>(out.size()) < count; ++attempt) {
    if (attempt > 5000) throw Error(ErrorCode::kInvalidArgument, "no tiny instances");
    GeneratorParams p;
    const int shape = static_cast<int>(attempt % 3);
    p.n_facilities = shape == 0 ? 1 : 2;
    p.grid_width = shape == 1 ? 1 : 2;
    p.grid_height = 1;
    p.n_central_offices = 1;
    p.n_steiner = 0;
    p.k_nearest = 0;
    p.ensure_reach = false;
    p.radius = {0.6 + unit(rng), 0.8 + unit(rng), 1.0 + 1.5 * unit(rng)};
    const double w1 = unit(rng) < 0.5 ? 0.0 : 0.5;
    const double w2 = std::max(w1, unit(rng) < 0.5 ? 0.0 : 0.5);
    const double w3 = unit(rng) < 0.3 ? 0.5 : 1.0;
    p.coverage_fraction = {w1, w2, w3};
    p.reference_distance = 0.3 + 0.7 * unit(rng);
    p.path_loss_exponent = 2.0 + 2.0 * unit(rng);
    p.noise = 0.02 + 0.1 * unit(rng);
    p.max_retries = 1;
    Instance inst;
    try {
      inst = Generate(p, rng());
    } catch (const Error&) {
      continue;
    }
    if (CountBinaries(inst) > max_binaries) continue;
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace confl3::testing

#endif  // CONFL3_TESTS_FIXTURES_HPP_
