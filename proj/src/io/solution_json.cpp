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
#include <map>
#include <sstream>
#include <string>

#include "confl3/error.hpp"
#include "confl3/solution_io.hpp"
#include "json.hpp"

namespace confl3 {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "confl3-solution";
constexpr int kVersion = 1;

json Optional(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

json InstanceRef(const Instance& instance) {
  return {{"name", instance.name}, {"hash", InstanceHash(instance)}};
}

json Design(const Instance& instance, const ConflModel& confl, const Assignment& a) {
  json open = json::array();
  for (int f = 0; f < instance.num_facilities(); ++f) {
    for (int t = 0; t < confl.num_techs; ++t) {
      if (a[confl.z[f][t]] > 0.5) open.push_back({{"facility", f}, {"technology", t + 1}});
    }
  }
  json served = json::array();
  for (int t = 0; t < confl.num_techs; ++t) {
    for (size_t k = 0; k < instance.assignment_arcs[t].size(); ++k) {
      if (a[confl.y[t][k]] > 0.5) {
        const AssignmentArc& arc = instance.assignment_arcs[t][k];
        served.push_back(
            {{"user", arc.user}, {"facility", arc.facility}, {"technology", t + 1}});
      }
    }
  }
  json arcs = json::array();
  for (size_t k = 0; k < confl.arcs.size(); ++k) {
    if (a[confl.x[k]] > 0.5) {
      arcs.push_back({{"tail", CoreNodeName(confl.arcs[k].tail)},
                      {"head", CoreNodeName(confl.arcs[k].head)}});
    }
  }
  json powers = json::array();
  for (size_t f = 0; f < confl.p.size(); ++f) {
    if (a[confl.z[f][kWireless]] > 0.5) {
      powers.push_back({{"facility", static_cast<int>(f)}, {"power", a[confl.p[f]]}});
    }
  }
  return {{"open_facilities", open},
          {"served_users", served},
          {"active_arcs", arcs},
          {"powers", powers}};
}

json Values(const Model& model, const Assignment& a) {
  json values = json::object();
  for (int j = 0; j < model.num_variables(); ++j) {
    const double v = a[VarId{j}];
    if (v != 0.0) values[model.variable(VarId{j}).name] = v;
  }
  return values;
}

json Verification(const Instance& instance, const ConflModel& confl,
                  const Assignment& a) {
  const VerificationReport rep = VerifySolution(instance, confl, a);
  return {{"feasible", rep.feasible()}, {"summary", rep.Summary()}};
}

json FosJson(const Fos& fos) {
  json out = json::array();
  for (const FacilityTech& e : fos.entries()) out.push_back({e.facility, e.tech + 1});
  return out;
}

std::string Dump(const json& doc) { return doc.dump(1) + "\n"; }

[[noreturn]] void Fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kSchema, "solution schema error at " + path + ": " + what);
}

const json& Field(const json& obj, const std::string& key) {
  const auto it = obj.find(key);
  if (it == obj.end()) Fail("/" + key, "missing required field");
  return *it;
}

std::optional<double> OptionalNumber(const json& v, const std::string& path) {
  if (v.is_null()) return std::nullopt;
  if (!v.is_number()) Fail(path, "expected a number or null");
  return v.get<double>();
}

std::string Text(const json& v, const std::string& path) {
  if (!v.is_string()) Fail(path, "expected a string");
  return v.get<std::string>();
}

}  // namespace

std::string HeuristicSolutionJson(const Instance& instance,
                                  const HeuristicParams& params,
                                  const RunResult& result) {
  const ConflModel confl = Build3Confl(instance);
  json doc;
  doc["format"] = kFormat;
  doc["version"] = kVersion;
  doc["instance"] = InstanceRef(instance);
  doc["method"] = "heuristic";
  const bool solved = result.status == RunStatus::kSolved;
  doc["status"] = solved ? "solved" : "no-solution";
  doc["objective"] = solved ? json(result.objective) : json(nullptr);
  doc["lower_bound"] = result.lower_bound;
  doc["gap"] = solved ? json(result.gap) : json(nullptr);
  json p = {{"alpha", params.alpha},
            {"sigma", params.sigma_count},
            {"vlns_radius", params.RadiusFor(instance)},
            {"seed", params.rng_seed},
            {"candidate_pool", params.candidate_pool}};
  if (params.max_outer_iterations) {
    p["iterations"] = *params.max_outer_iterations;
  } else {
    p["time_limit"] = params.global_time_limit;
    p["outer_limit"] = params.outer_loop_limit;
    p["sub_limit"] = params.subproblem_time_limit;
    p["vlns_limit"] = params.vlns_time_limit;
  }
  doc["params"] = p;
  doc["outer_iterations"] = result.outer_iterations;
  doc["final_search_improved"] = result.final_improved;
  if (solved) {
    doc["design"] = Design(instance, confl, *result.best);
    doc["verification"] = Verification(instance, confl, *result.best);
    doc["assignment"] = Values(confl.model, *result.best);
  }
  json trace = json::array();
  for (const TraceEntry& e : result.trace) {
    trace.push_back({{"outer", e.outer},
                     {"sigma", e.sigma},
                     {"fos", FosJson(e.fos)},
                     {"complete", e.complete},
                     {"repaired", e.repaired},
                     {"status", MipStatusName(e.status)},
                     {"objective", Optional(e.objective)},
                     {"best", Optional(e.best)}});
  }
  doc["trace"] = trace;
  return Dump(doc);
}

std::string ExactSolutionJson(const Instance& instance, const ConflModel& confl,
                              bool strengthened, const MipResult& result) {
  json doc;
  doc["format"] = kFormat;
  doc["version"] = kVersion;
  doc["instance"] = InstanceRef(instance);
  doc["method"] = "exact";
  doc["formulation"] = {{"technologies", confl.num_techs}, {"strengthened", strengthened}};
  doc["status"] = MipStatusName(result.status);
  const bool has = result.has_incumbent();
  doc["objective"] = has ? json(result.objective) : json(nullptr);
  doc["lower_bound"] = std::isfinite(result.lower_bound) ? json(result.lower_bound)
                                                          : json(nullptr);
  std::optional<double> gap;
  if (has) {
    gap = result.objective > 0.0 ? OGap(result.objective, std::min(result.objective,
                                                                   result.lower_bound))
                                 : 0.0;
  }
  doc["gap"] = Optional(gap);
  doc["nodes"] = result.nodes;
  if (has) {
    doc["design"] = Design(instance, confl, *result.incumbent);
    doc["verification"] = Verification(instance, confl, *result.incumbent);
    doc["assignment"] = Values(confl.model, *result.incumbent);
  }
  return Dump(doc);
}

SolutionSummary ReadSolutionSummary(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kSchema, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) Fail("/", "expected an object");
  if (Text(Field(doc, "format"), "/format") != kFormat) {
    Fail("/format", std::string("expected '") + kFormat + "'");
  }
  SolutionSummary s;
  s.method = Text(Field(doc, "method"), "/method");
  if (s.method != "heuristic" && s.method != "exact") {
    Fail("/method", "expected 'heuristic' or 'exact'");
  }
  const json& inst = Field(doc, "instance");
  if (!inst.is_object()) Fail("/instance", "expected an object");
  if (!inst.contains("name")) Fail("/instance/name", "missing required field");
  if (!inst.contains("hash")) Fail("/instance/hash", "missing required field");
  s.instance_name = Text(inst["name"], "/instance/name");
  s.instance_hash = Text(inst["hash"], "/instance/hash");
  s.status = Text(Field(doc, "status"), "/status");
  s.objective = OptionalNumber(Field(doc, "objective"), "/objective");
  s.lower_bound = OptionalNumber(Field(doc, "lower_bound"), "/lower_bound").value_or(0.0);
  s.gap = OptionalNumber(Field(doc, "gap"), "/gap");
  return s;
}

std::vector<ResultRow> PairSolutions(const std::vector<SolutionSummary>& solutions) {
  struct Pair {
    std::string name;
    const SolutionSummary* exact = nullptr;
    const SolutionSummary* heuristic = nullptr;
  };
  std::vector<std::string> order;
  std::map<std::string, Pair> by_hash;
  for (const SolutionSummary& s : solutions) {
    auto [it, inserted] = by_hash.try_emplace(s.instance_hash);
    if (inserted) {
      order.push_back(s.instance_hash);
      it->second.name = s.instance_name;
    }
    const SolutionSummary*& slot =
        s.method == "exact" ? it->second.exact : it->second.heuristic;
    if (slot) {
      throw Error(ErrorCode::kInvalidArgument,
                  "two " + s.method + " solutions for instance '" + s.instance_name +
                      "' (hash " + s.instance_hash + ")");
    }
    slot = &s;
  }
  std::vector<ResultRow> rows;
  for (const std::string& hash : order) {
    const Pair& p = by_hash.at(hash);
    for (const auto& [side, sol] : {std::pair{"exact", p.exact}, {"heuristic", p.heuristic}}) {
      if (!sol) {
        throw Error(ErrorCode::kInvalidArgument,
                    std::string("instance '") + p.name + "' (hash " + hash +
                        ") has no " + side + " solution to compare against");
      }
      if (!sol->gap) {
        throw Error(ErrorCode::kInvalidArgument,
                    std::string("the ") + side + " solution for '" + p.name +
                        "' has no gap (status " + sol->status + ")");
      }
    }
    rows.push_back({p.name, 100.0 * *p.exact->gap, 100.0 * *p.heuristic->gap});
  }
  return rows;
}

std::vector<ResultRow> ReadResultRowsCsv(const std::string& text) {
  std::vector<ResultRow> rows;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() < 3) {
      throw Error(ErrorCode::kSchema,
                  "line " + std::to_string(number) + ": expected id,gap_ref,gap_heu");
    }
    try {
      size_t used_ref = 0, used_heu = 0;
      const double ref = std::stod(cells[1], &used_ref);
      const double heu = std::stod(cells[2], &used_heu);
      if (used_ref != cells[1].size() || used_heu != cells[2].size()) {
        throw std::invalid_argument("trailing characters");
      }
      rows.push_back({cells[0], ref, heu});
    } catch (const std::logic_error&) {
      if (rows.empty() && number == 1) continue;  // header
      throw Error(ErrorCode::kSchema,
                  "line " + std::to_string(number) + ": gaps must be numbers");
    }
  }
  return rows;
}

}  // namespace confl3
