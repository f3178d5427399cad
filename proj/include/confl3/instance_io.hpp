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

// Testpoint-grid instance generation, JSON (de)serialization and the
// gap-comparison report.

#ifndef CONFL3_INSTANCE_IO_HPP_
#define CONFL3_INSTANCE_IO_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "confl3/instance.hpp"

namespace confl3 {

struct CostRange {
  double lo = 0.0;
  double hi = 0.0;
};

struct GeneratorParams {
  int grid_width = 25;
  int grid_height = 18;
  int n_facilities = 30;
  int n_central_offices = 5;
  int n_steiner = 8;
  int users_per_pixel = 1;
  double user_weight = 1.0;

  // Core graph: each core node links to its k nearest core neighbours in
  // both directions; every facility also gets an arc from its nearest
  // central office.
  int k_nearest = 4;
  double core_cost_per_unit = 10.0;

  // Reach of each technology in pixels (the wireless one bounds U_f^3).
  std::array<double, kNumTechnologies> radius{4.0, 6.0, 8.0};
  // Give every facility at least its nearest user on each technology.
  bool ensure_reach = true;

  std::array<double, kNumTechnologies> coverage_fraction{0.2, 0.5, 0.7};

  CostRange central_office_cost{50.0, 100.0};
  std::array<CostRange, kNumTechnologies> facility_cost{
      CostRange{20.0, 40.0}, CostRange{15.0, 30.0}, CostRange{40.0, 80.0}};
  // Wired assignment arcs cost a factor per unit distance; wireless arcs a
  // flat amount drawn from the third range.
  std::array<CostRange, kNumTechnologies> assignment_cost{
      CostRange{4.0, 6.0}, CostRange{2.0, 3.0}, CostRange{0.1, 0.5}};

  double p_min = 0.1;
  double p_max = 1.0;
  double delta = 2.0;
  double noise = 0.05;
  double path_loss_exponent = 3.0;
  double reference_distance = 1.0;

  int max_retries = 50;
};

// Throws Error(kInvalidArgument) naming the offending field.
void ValidateGeneratorParams(const GeneratorParams& params);

// Pure function of (params, seed). Throws Error(kUnattainableCoverage) when
// no draw within max_retries makes every threshold attainable.
Instance Generate(const GeneratorParams& params, uint64_t seed);

// Fading of a link at the given distance: min(1, (d0 / d)^gamma).
double PathLossFading(double distance, double reference_distance,
                      double exponent);

std::string WriteInstance(const Instance& instance);
// Throws Error(kSchema) with a JSON-pointer style path, or
// Error(kInvalidInstance) when the document parses but breaks an invariant.
Instance ReadInstance(const std::string& text);

Instance LoadInstanceFile(const std::string& path);
void SaveTextFile(const std::string& path, const std::string& text);
std::string LoadTextFile(const std::string& path);

// 64-bit FNV-1a of the canonical serialization, as 16 hex digits.
std::string InstanceHash(const Instance& instance);

struct ResultRow {
  std::string id;
  double gap_reference = 0.0;  // percent
  double gap_heuristic = 0.0;  // percent

  // 100 (heuristic - reference) / reference. Throws Error(kInvalidArgument)
  // when the reference gap is not positive.
  double DeltaGap() const;
};

// Aligned table with an average footer, or CSV when `csv` is set.
std::string Report(const std::vector<ResultRow>& rows, bool csv = false);

}  // namespace confl3

#endif  // CONFL3_INSTANCE_IO_HPP_
