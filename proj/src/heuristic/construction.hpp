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

#ifndef CONFL3_HEURISTIC_CONSTRUCTION_HPP_
#define CONFL3_HEURISTIC_CONSTRUCTION_HPP_

#include "confl3/heuristic.hpp"

namespace confl3::internal {

struct Construction {
  Fos fos;
  bool complete = true;
  // First technology left partial when `complete` is false.
  int stuck_tech = -1;
};

// BuildFos without the throw; `relaxed_plain` is LpRelaxation(plain.model).
Construction Construct(const Instance& instance, const ConflModel& plain,
                       const Model& relaxed_plain,
                       const AttractivenessTable& table,
                       const HeuristicParams& params, Rng& rng);

double PosteriorFromRelaxation(const ConflModel& plain, const Model& relaxed_plain,
                               const Fos& fos, FacilityTech candidate,
                               double root_bound, const SimplexOptions& lp);

}  // namespace confl3::internal

#endif  // CONFL3_HEURISTIC_CONSTRUCTION_HPP_
