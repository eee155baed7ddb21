// Copyright 2026 The Constellation OLAP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "constellation/algebra.h"
#include "constellation/restriction.h"

namespace constellation {

// One aggregate: a number, or the sorted value set of a distinct_set measure.
using CellValue = std::variant<double, std::vector<std::string>>;
using CellTuple = std::vector<CellValue>;

struct Axis {
  std::string dim;
  std::string hier;
  std::string level;
  std::vector<std::string> values;

  friend bool operator==(const Axis&, const Axis&) = default;
};

struct FooterLine {
  // Set when the dimension belongs to a single fact of the schema.
  std::string fact;
  std::string dim;
  std::string param;
  Comparator op = Comparator::kEq;
  std::vector<Literal> literals;

  friend bool operator==(const FooterLine&, const FooterLine&) = default;
};

// "Sale.person.position=\"manager\"", "Date.year=2000".
std::string FooterText(const FooterLine& line);

// A displayed plane: current fact by its two current dimensions. Groups
// without rows have no entry in `cells`.
struct NTable {
  std::string fact;
  std::vector<std::string> measures;
  Axis col_axis;
  Axis row_axis;
  std::map<std::pair<std::string, std::string>, CellTuple> cells;  // (row, col)
  std::vector<FooterLine> footer;

  const CellTuple* Cell(const std::string& row, const std::string& col) const;

  friend bool operator==(const NTable&, const NTable&) = default;
};

namespace ntable {

// Aggregates the restricted rows of the current fact at the display levels
// of its two current dimensions. Throws EmptyMeasureSet.
NTable Build(const AnalysisContext& ctx);

// "(58, 6, 2)"; distinct sets print as "{a, b}".
std::string FormatCell(const CellTuple& cell);

std::string RenderText(const NTable& table);

nlohmann::json Encode(const NTable& table);
NTable Decode(const nlohmann::json& doc);

}  // namespace ntable
}  // namespace constellation
