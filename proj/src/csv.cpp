// SPDX-License-Identifier: Apache-2.0

#include "jamsense/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace jamsense {

std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string format_csv(const std::vector<ResultRow>& rows) {
  std::vector<std::string> names;
  for (const auto& r : rows) {
    for (const auto& [name, value] : r.params) {
      if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
    }
  }
  std::ostringstream out;
  out << "scenario";
  for (const auto& n : names) out << ',' << n;
  out << ",metric,value,trials,std_error\n";
  for (const auto& r : rows) {
    out << r.scenario;
    for (const auto& n : names) {
      out << ',';
      auto it = std::find_if(r.params.begin(), r.params.end(),
                             [&](const auto& p) { return p.first == n; });
      if (it != r.params.end()) out << format_value(it->second);
    }
    out << ',' << r.metric << ',' << format_value(r.value) << ',' << r.trials << ','
        << format_value(r.std_error) << '\n';
  }
  return out.str();
}

void write_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  if (rows.empty()) throw ValidationError("write_csv: no rows to write");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("write_csv: cannot open " + path);
  f << format_csv(rows);
  if (!f) throw std::runtime_error("write_csv: write failed for " + path);
}

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (first) {
      t.header = std::move(cells);
      first = false;
    } else {
      t.rows.push_back(std::move(cells));
    }
  }
  return t;
}

}  // namespace jamsense
