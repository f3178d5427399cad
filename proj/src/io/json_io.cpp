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

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "confl3/error.hpp"
#include "confl3/instance_io.hpp"
#include "json.hpp"

namespace confl3 {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "confl3-instance";
constexpr int kVersion = 1;

const char* kTechKeys[kNumTechnologies] = {"t1", "t2", "t3"};

json PointFields(json obj, Point p) {
  obj["x"] = p.x;
  obj["y"] = p.y;
  return obj;
}

json ToJson(const Instance& inst) {
  json doc;
  doc["meta"] = {{"format", kFormat}, {"version", kVersion}, {"name", inst.name}};
  json users = json::array();
  for (const User& u : inst.users) {
    users.push_back(PointFields({{"id", u.id}, {"weight", u.weight}}, u.position));
  }
  doc["users"] = users;
  json facilities = json::array();
  for (const Facility& f : inst.facilities) {
    facilities.push_back(PointFields(
        {{"id", f.id},
         {"open_cost", {f.open_cost[0], f.open_cost[1], f.open_cost[2]}}},
        f.position));
  }
  doc["facilities"] = facilities;
  json offices = json::array();
  for (const CentralOffice& c : inst.central_offices) {
    offices.push_back(
        PointFields({{"id", c.id}, {"open_cost", c.open_cost}}, c.position));
  }
  doc["central_offices"] = offices;
  json steiner = json::array();
  for (const SteinerNode& s : inst.steiner_nodes) {
    steiner.push_back(PointFields({{"id", s.id}}, s.position));
  }
  doc["steiner_nodes"] = steiner;
  json arcs = json::array();
  for (const CoreArc& a : inst.core_arcs) {
    arcs.push_back({{"tail", CoreNodeName(a.tail)},
                    {"head", CoreNodeName(a.head)},
                    {"cost", a.cost}});
  }
  doc["core_arcs"] = arcs;
  json assignment = json::object();
  for (int t = 0; t < kNumTechnologies; ++t) {
    json list = json::array();
    for (const AssignmentArc& a : inst.assignment_arcs[t]) {
      list.push_back({{"facility", a.facility}, {"user", a.user}, {"cost", a.cost}});
    }
    assignment[kTechKeys[t]] = list;
  }
  doc["assignment_arcs"] = assignment;
  doc["coverage_thresholds"] = {inst.coverage[0], inst.coverage[1],
                                inst.coverage[2]};
  if (inst.wireless) {
    const WirelessParams& w = *inst.wireless;
    doc["wireless"] = {{"p_min", w.p_min},   {"p_max", w.p_max},
                       {"delta", w.delta},   {"noise", w.noise},
                       {"fading", w.fading}};
  } else {
    doc["wireless"] = nullptr;
  }
  return doc;
}

// Typed field access that reports the JSON path on failure.
class Reader {
 public:
  [[noreturn]] static void Fail(const std::string& path, const std::string& what) {
    throw Error(ErrorCode::kSchema,
                "instance schema error at " + (path.empty() ? "/" : path) +
                    ": " + what);
  }

  static const json& Field(const json& obj, const std::string& path,
                           const std::string& key) {
    if (!obj.is_object()) Fail(path, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) Fail(path + "/" + key, "missing required field");
    return *it;
  }

  static double Number(const json& obj, const std::string& path,
                       const std::string& key) {
    const json& v = Field(obj, path, key);
    if (!v.is_number()) Fail(path + "/" + key, "expected a number");
    return v.get<double>();
  }

  static int Integer(const json& obj, const std::string& path,
                     const std::string& key) {
    const json& v = Field(obj, path, key);
    if (!v.is_number_integer()) Fail(path + "/" + key, "expected an integer");
    return v.get<int>();
  }

  static std::string Text(const json& obj, const std::string& path,
                          const std::string& key) {
    const json& v = Field(obj, path, key);
    if (!v.is_string()) Fail(path + "/" + key, "expected a string");
    return v.get<std::string>();
  }

  static const json& Array(const json& obj, const std::string& path,
                           const std::string& key) {
    const json& v = Field(obj, path, key);
    if (!v.is_array()) Fail(path + "/" + key, "expected an array");
    return v;
  }

  static CoreNode Node(const json& obj, const std::string& path,
                       const std::string& key) {
    const std::string name = Text(obj, path, key);
    const std::optional<CoreNode> node = ParseCoreNode(name);
    if (!node || node->kind == NodeKind::kRoot) {
      Fail(path + "/" + key, "'" + name + "' is not a core node name (F<i>, C<i>, S<i>)");
    }
    return *node;
  }

  static Point Position(const json& obj, const std::string& path) {
    return {Number(obj, path, "x"), Number(obj, path, "y")};
  }
};

Instance FromJson(const json& doc) {
  using R = Reader;
  Instance inst;
  const json& meta = R::Field(doc, "", "meta");
  if (R::Text(meta, "/meta", "format") != kFormat) {
    R::Fail("/meta/format", std::string("expected '") + kFormat + "'");
  }
  if (R::Integer(meta, "/meta", "version") != kVersion) {
    R::Fail("/meta/version", "unsupported version");
  }
  inst.name = R::Text(meta, "/meta", "name");

  const json& users = R::Array(doc, "", "users");
  for (size_t i = 0; i < users.size(); ++i) {
    const std::string p = "/users/" + std::to_string(i);
    inst.users.push_back({R::Integer(users[i], p, "id"),
                          R::Number(users[i], p, "weight"),
                          R::Position(users[i], p)});
  }
  const json& facilities = R::Array(doc, "", "facilities");
  for (size_t i = 0; i < facilities.size(); ++i) {
    const std::string p = "/facilities/" + std::to_string(i);
    Facility f{R::Integer(facilities[i], p, "id"), R::Position(facilities[i], p), {}};
    const json& costs = R::Array(facilities[i], p, "open_cost");
    if (costs.size() != kNumTechnologies) {
      R::Fail(p + "/open_cost", "expected 3 technology costs");
    }
    for (int t = 0; t < kNumTechnologies; ++t) {
      if (!costs[t].is_number()) {
        R::Fail(p + "/open_cost/" + std::to_string(t), "expected a number");
      }
      f.open_cost[t] = costs[t].get<double>();
    }
    inst.facilities.push_back(f);
  }
  const json& offices = R::Array(doc, "", "central_offices");
  for (size_t i = 0; i < offices.size(); ++i) {
    const std::string p = "/central_offices/" + std::to_string(i);
    inst.central_offices.push_back({R::Integer(offices[i], p, "id"),
                                    R::Position(offices[i], p),
                                    R::Number(offices[i], p, "open_cost")});
  }
  const json& steiner = R::Array(doc, "", "steiner_nodes");
  for (size_t i = 0; i < steiner.size(); ++i) {
    const std::string p = "/steiner_nodes/" + std::to_string(i);
    inst.steiner_nodes.push_back(
        {R::Integer(steiner[i], p, "id"), R::Position(steiner[i], p)});
  }
  const json& arcs = R::Array(doc, "", "core_arcs");
  for (size_t i = 0; i < arcs.size(); ++i) {
    const std::string p = "/core_arcs/" + std::to_string(i);
    inst.core_arcs.push_back({R::Node(arcs[i], p, "tail"),
                              R::Node(arcs[i], p, "head"),
                              R::Number(arcs[i], p, "cost")});
  }
  const json& assignment = R::Field(doc, "", "assignment_arcs");
  for (int t = 0; t < kNumTechnologies; ++t) {
    const std::string base = "/assignment_arcs";
    const json& list = R::Array(assignment, base, kTechKeys[t]);
    for (size_t i = 0; i < list.size(); ++i) {
      const std::string p = base + "/" + kTechKeys[t] + "/" + std::to_string(i);
      inst.assignment_arcs[t].push_back({R::Integer(list[i], p, "facility"),
                                         R::Integer(list[i], p, "user"),
                                         R::Number(list[i], p, "cost")});
    }
  }
  const json& coverage = R::Array(doc, "", "coverage_thresholds");
  if (coverage.size() != kNumTechnologies) {
    R::Fail("/coverage_thresholds", "expected 3 thresholds");
  }
  for (int t = 0; t < kNumTechnologies; ++t) {
    if (!coverage[t].is_number()) {
      R::Fail("/coverage_thresholds/" + std::to_string(t), "expected a number");
    }
    inst.coverage[t] = coverage[t].get<double>();
  }

  const json& wireless = R::Field(doc, "", "wireless");
  if (!wireless.is_null()) {
    WirelessParams w;
    w.p_min = R::Number(wireless, "/wireless", "p_min");
    w.p_max = R::Number(wireless, "/wireless", "p_max");
    w.delta = R::Number(wireless, "/wireless", "delta");
    w.noise = R::Number(wireless, "/wireless", "noise");
    const json& fading = R::Array(wireless, "/wireless", "fading");
    for (size_t f = 0; f < fading.size(); ++f) {
      const std::string p = "/wireless/fading/" + std::to_string(f);
      if (!fading[f].is_array()) R::Fail(p, "expected an array");
      std::vector<double> row;
      for (size_t u = 0; u < fading[f].size(); ++u) {
        if (!fading[f][u].is_number()) {
          R::Fail(p + "/" + std::to_string(u), "expected a number");
        }
        row.push_back(fading[f][u].get<double>());
      }
      w.fading.push_back(std::move(row));
    }
    inst.wireless = std::move(w);
  }
  return inst;
}

}  // namespace

std::string WriteInstance(const Instance& instance) {
  return ToJson(instance).dump(1) + "\n";
}

Instance ReadInstance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kSchema, std::string("malformed JSON: ") + e.what());
  }
  Instance inst = FromJson(doc);
  ValidateInstance(inst);
  return inst;
}

std::string LoadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kInvalidArgument, "cannot open '" + path + "' for reading");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void SaveTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kInvalidArgument, "cannot open '" + path + "' for writing");
  }
  out << text;
  if (!out) throw Error(ErrorCode::kInvalidArgument, "failed writing '" + path + "'");
}

Instance LoadInstanceFile(const std::string& path) {
  return ReadInstance(LoadTextFile(path));
}

std::string InstanceHash(const Instance& instance) {
  const std::string text = ToJson(instance).dump();
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

}  // namespace confl3
