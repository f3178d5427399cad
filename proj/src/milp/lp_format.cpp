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

#include <cctype>
#include <cmath>
#include <cstdio>
#include <string>
#include <unordered_set>

#include "confl3/milp.hpp"

namespace confl3 {
namespace {

// Mainstream LP readers accept wider alphabets, but [A-Za-z0-9_] is the
// common denominator.
std::string SanitizeName(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '_'
                      ? c
                      : '_');
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0]))) {
    out.insert(out.begin(), 'v');
  }
  return out;
}

std::string Number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class LinearWriter {
 public:
  explicit LinearWriter(std::string& out) : out_(out) {}

  void Add(double coef, const std::string& name) {
    if (count_ > 0 && count_ % 6 == 0) out_ += "\n   ";
    if (count_ == 0) {
      if (coef < 0) out_ += "- ";
    } else {
      out_ += coef < 0 ? " - " : " + ";
    }
    const double mag = std::abs(coef);
    if (mag != 1.0) {
      out_ += Number(mag);
      out_ += ' ';
    }
    out_ += name;
    ++count_;
  }

  int count() const { return count_; }

 private:
  std::string& out_;
  int count_ = 0;
};

}  // namespace

std::string ExportLpText(const Model& model) {
  std::vector<std::string> names;
  names.reserve(model.num_variables());
  std::unordered_set<std::string> used;
  for (int j = 0; j < model.num_variables(); ++j) {
    std::string name = SanitizeName(model.variable(VarId{j}).name);
    if (used.contains(name)) name += "_v" + std::to_string(j);
    used.insert(name);
    names.push_back(std::move(name));
  }

  std::string out;
  out += "\\ confl3 model: ";
  out += std::to_string(model.num_variables()) + " variables, " +
         std::to_string(model.num_constraints()) + " constraints\n";
  out += "Minimize\n obj: ";
  {
    LinearWriter writer(out);
    const auto objective = model.objective();
    for (int j = 0; j < model.num_variables(); ++j) {
      if (objective[j] != 0.0) writer.Add(objective[j], names[j]);
    }
    if (writer.count() == 0 && model.num_variables() > 0) {
      out += "0 " + names[0];
    }
  }
  out += "\nSubject To\n";
  for (int i = 0; i < model.num_constraints(); ++i) {
    const LinearConstraint& row = model.constraint(ConstraintId{i});
    out += ' ';
    out += SanitizeName(row.tag.empty() ? "c" : row.tag);
    out += "_r" + std::to_string(i) + ": ";
    LinearWriter writer(out);
    for (const Term& t : row.terms) {
      if (t.coef != 0.0) writer.Add(t.coef, names[t.var.value]);
    }
    if (writer.count() == 0) {
      // Keep the row so ids stay aligned; a zero row needs some variable.
      out += model.num_variables() > 0 ? "0 " + names[0] : "0 zero";
    }
    switch (row.sense) {
      case Sense::kLessEqual: out += " <= "; break;
      case Sense::kGreaterEqual: out += " >= "; break;
      case Sense::kEqual: out += " = "; break;
    }
    out += Number(row.rhs);
    out += '\n';
  }
  out += "Bounds\n";
  for (int j = 0; j < model.num_variables(); ++j) {
    const Variable& v = model.variable(VarId{j});
    const std::string& n = names[j];
    if (v.kind == VarKind::kBinary) {
      if (v.lower == v.upper) out += ' ' + n + " = " + Number(v.lower) + '\n';
      continue;
    }
    if (v.lower == v.upper) {
      out += ' ' + n + " = " + Number(v.lower) + '\n';
    } else if (std::isinf(v.lower) && std::isinf(v.upper)) {
      out += ' ' + n + " free\n";
    } else {
      out += ' ';
      out += std::isinf(v.lower) ? "-infinity" : Number(v.lower);
      out += " <= " + n + " <= ";
      out += std::isinf(v.upper) ? "+infinity" : Number(v.upper);
      out += '\n';
    }
  }
  out += "Binaries\n";
  for (int j = 0; j < model.num_variables(); ++j) {
    if (model.variable(VarId{j}).kind == VarKind::kBinary) {
      out += ' ' + names[j] + '\n';
    }
  }
  out += "End\n";
  return out;
}

}  // namespace confl3
