// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "jamsense/experiments.hpp"

namespace jamsense {

/// Nine significant digits; infinities as "inf" / "-inf", NaN as "nan".
std::string format_value(double v);

/// Header line plus one line per row.  Parameter columns are the union of
/// parameter names in first-seen order; missing values are left empty.
std::string format_csv(const std::vector<ResultRow>& rows);

void write_csv(const std::vector<ResultRow>& rows, const std::string& path);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Splits a comma-separated document (no quoting) into cells.
CsvTable parse_csv(const std::string& text);

}  // namespace jamsense
