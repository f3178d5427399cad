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
#include <cstdio>
#include <string>

#include "confl3/error.hpp"
#include "confl3/instance_io.hpp"

namespace confl3 {

double ResultRow::DeltaGap() const {
  if (!(gap_reference > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "row '" + id + "': reference gap must be positive");
  }
  return 100.0 * (gap_heuristic - gap_reference) / gap_reference;
}

namespace {

std::string Fixed2(double v) {
  // Keep "-0.00" out of the table.
  if (std::abs(v) < 0.005) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string Pad(const std::string& s, size_t width, bool left) {
  if (s.size() >= width) return s;
  const std::string fill(width - s.size(), ' ');
  return left ? s + fill : fill + s;
}

}  // namespace

std::string Report(const std::vector<ResultRow>& rows, bool csv) {
  // A zero reference gap (proved optimum) leaves the delta undefined; such
  // rows print n/a and stay out of the average.
  std::vector<std::string> deltas;
  double sum = 0.0;
  int defined = 0;
  for (const ResultRow& r : rows) {
    if (r.gap_reference > 0.0) {
      const double d = r.DeltaGap();
      deltas.push_back(Fixed2(d));
      sum += d;
      ++defined;
    } else {
      deltas.push_back("n/a");
    }
  }
  const std::string average = defined > 0 ? Fixed2(sum / defined) : "n/a";

  std::string out;
  if (csv) {
    out += "id,gap_ref_pct,gap_heu_pct,delta_gap_pct\n";
    for (size_t i = 0; i < rows.size(); ++i) {
      out += rows[i].id + "," + Fixed2(rows[i].gap_reference) + "," +
             Fixed2(rows[i].gap_heuristic) + "," + deltas[i] + "\n";
    }
    if (!rows.empty()) out += "average,,," + average + "\n";
    return out;
  }

  const std::vector<std::string> header{"ID", "Gap-Ref%", "Gap-Heu%", "ΔGap%"};
  std::vector<std::vector<std::string>> cells;
  for (size_t i = 0; i < rows.size(); ++i) {
    cells.push_back({rows[i].id, Fixed2(rows[i].gap_reference),
                     Fixed2(rows[i].gap_heuristic), deltas[i]});
  }
  if (!rows.empty()) cells.push_back({"Average", "", "", average});

  // Display width: the delta sign counts as one column though it is two bytes.
  auto width_of = [](const std::string& s) {
    size_t w = 0;
    for (unsigned char c : s) w += (c & 0xC0) != 0x80;
    return w;
  };
  std::vector<size_t> widths(header.size());
  for (size_t c = 0; c < header.size(); ++c) {
    widths[c] = width_of(header[c]);
    for (const auto& row : cells) widths[c] = std::max(widths[c], width_of(row[c]));
  }
  auto line = [&](const std::vector<std::string>& row) {
    std::string s;
    for (size_t c = 0; c < row.size(); ++c) {
      const size_t extra = row[c].size() - width_of(row[c]);
      if (c > 0) s += "  ";
      s += Pad(row[c], widths[c] + extra, c == 0);
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s + "\n";
  };
  size_t total = 0;
  for (size_t w : widths) total += w;
  total += 2 * (widths.size() - 1);
  const std::string rule(total, '-');

  out += line(header);
  out += rule + "\n";
  for (size_t i = 0; i < rows.size(); ++i) out += line(cells[i]);
  if (!rows.empty()) {
    out += rule + "\n";
    out += line(cells.back());
  }
  return out;
}

}  // namespace confl3
