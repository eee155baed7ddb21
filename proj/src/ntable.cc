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

#include "constellation/ntable.h"

#include <algorithm>
#include <set>

#include "constellation/errors.h"
#include "constellation/value.h"

namespace constellation {

std::string FooterText(const FooterLine& line) {
  std::string out;
  if (!line.fact.empty()) out = Capitalize(line.fact) + "." + line.dim + ".";
  else out = Capitalize(line.dim) + ".";
  Predicate pred{line.dim, line.param, line.op, line.literals};
  return out + PredicateText(pred);
}

const CellTuple* NTable::Cell(const std::string& row, const std::string& col) const {
  auto it = cells.find({row, col});
  return it == cells.end() ? nullptr : &it->second;
}

namespace ntable {
namespace {

struct AxisIndex {
  Axis axis;
  // Header position per member, -1 when the member is filtered out.
  std::vector<int32_t> position;
};

AxisIndex MakeAxis(const AnalysisContext& ctx, const std::string& dim,
                   const std::vector<char>* mask) {
  AxisIndex out;
  const Dimension& d = *ctx.schema.FindDimension(dim);
  const DimensionTable& table = ctx.store->dimension(dim);
  out.axis.dim = dim;
  out.axis.hier = d.current().name;
  out.axis.level = ctx.display_level(dim);
  out.position.assign(table.member_count, -1);
  auto passes = [&](size_t m) { return mask == nullptr || (*mask)[m]; };

  if (out.axis.level == kAllParam) {
    for (size_t m = 0; m < table.member_count; ++m) {
      if (passes(m)) out.position[m] = 0;
    }
    if (std::find(out.position.begin(), out.position.end(), 0) != out.position.end()) {
      out.axis.values.emplace_back(kAllValue);
    }
    return out;
  }

  const AttributeColumn& column = *table.Column(out.axis.level);
  std::vector<char> present(column.dictionary().size(), 0);
  for (size_t m = 0; m < table.member_count; ++m) {
    if (passes(m)) present[column.codes()[m]] = 1;
  }
  std::vector<int32_t> code_position(present.size(), -1);
  for (const auto& value : ctx.Ordering(dim, out.axis.level)) {
    auto code = column.Find(value);
    if (!code || !present[*code]) continue;
    code_position[*code] = static_cast<int32_t>(out.axis.values.size());
    out.axis.values.push_back(value);
  }
  for (size_t m = 0; m < table.member_count; ++m) {
    if (passes(m)) out.position[m] = code_position[column.codes()[m]];
  }
  return out;
}

class Accumulator {
 public:
  Accumulator(const MeasureDef& def, const MeasureColumn& column, size_t cells)
      : agg_(def.agg), column_(column) {
    switch (agg_) {
      case AggFunc::kDistinctSet:
        sets_.resize(cells);
        break;
      case AggFunc::kCount:
        break;
      default:
        values_.assign(cells, 0.0);
        seen_.assign(cells, 0);
        break;
    }
  }

  void Add(size_t cell, size_t row) {
    switch (agg_) {
      case AggFunc::kSum:
      case AggFunc::kAvg:
        values_[cell] += column_.numbers[row];
        break;
      case AggFunc::kMin:
      case AggFunc::kMax: {
        double v = column_.numbers[row];
        if (!seen_[cell]) values_[cell] = v;
        else if (agg_ == AggFunc::kMin) values_[cell] = std::min(values_[cell], v);
        else values_[cell] = std::max(values_[cell], v);
        seen_[cell] = 1;
        break;
      }
      case AggFunc::kDistinctSet:
        sets_[cell].insert(column_.Text(row));
        break;
      case AggFunc::kCount:
        break;
    }
  }

  CellValue Finish(size_t cell, uint64_t rows) const {
    switch (agg_) {
      case AggFunc::kCount: return static_cast<double>(rows);
      case AggFunc::kAvg: return values_[cell] / static_cast<double>(rows);
      case AggFunc::kDistinctSet:
        return std::vector<std::string>(sets_[cell].begin(), sets_[cell].end());
      default: return values_[cell];
    }
  }

 private:
  AggFunc agg_;
  const MeasureColumn& column_;
  std::vector<double> values_;
  std::vector<char> seen_;
  std::vector<std::set<std::string>> sets_;
};

}  // namespace

NTable Build(const AnalysisContext& ctx) {
  const Fact& fact = ctx.schema.facts.front();
  if (fact.measures.empty()) {
    throw OlapError(ErrorCode::kEmptyMeasureSet, "fact '" + fact.name + "' has no measures");
  }
  const auto& linked = ctx.schema.Linked(fact.name);
  if (linked.size() < 2) {
    throw OlapError(ErrorCode::kValidationError, "fact needs two current dimensions");
  }
  const FactTable& table = ctx.store->fact(fact.name);
  RestrictionSet applicable = algebra::ApplicableRestrictions(ctx, fact.name);

  std::map<std::string, std::vector<Predicate>> by_dim;
  for (const auto& pred : applicable.predicates()) by_dim[pred.dim].push_back(pred);
  std::map<std::string, std::vector<char>> masks;
  for (const auto& [dim, preds] : by_dim) {
    masks[dim] = MemberMask(ctx.store->dimension(dim), preds);
  }
  auto mask_of = [&](const std::string& dim) -> const std::vector<char>* {
    auto it = masks.find(dim);
    return it == masks.end() ? nullptr : &it->second;
  };

  NTable out;
  out.fact = fact.name;
  for (const auto& m : fact.measures) out.measures.push_back(m.name);
  AxisIndex col = MakeAxis(ctx, linked[0], mask_of(linked[0]));
  AxisIndex row = MakeAxis(ctx, linked[1], mask_of(linked[1]));

  const size_t ncols = col.axis.values.size();
  const size_t ncells = ncols * row.axis.values.size();
  std::vector<Accumulator> accumulators;
  accumulators.reserve(fact.measures.size());
  for (const auto& m : fact.measures) {
    const MeasureColumn* column = table.Measure(m.name);
    if (column == nullptr) {
      throw OlapError(ErrorCode::kUnknownMeasure, "no data for measure '" + m.name + "'");
    }
    accumulators.emplace_back(m, *column, ncells);
  }

  std::vector<std::pair<const uint32_t*, const char*>> filters;
  for (const auto& [dim, mask] : masks) {
    if (dim == linked[0] || dim == linked[1]) continue;
    filters.emplace_back(table.Refs(dim)->data(), mask.data());
  }
  const uint32_t* col_refs = table.Refs(linked[0])->data();
  const uint32_t* row_refs = table.Refs(linked[1])->data();
  std::vector<uint64_t> counts(ncells, 0);

  for (size_t r = 0; r < table.row_count; ++r) {
    int32_t c = col.position[col_refs[r]];
    if (c < 0) continue;
    int32_t w = row.position[row_refs[r]];
    if (w < 0) continue;
    bool keep = true;
    for (const auto& [refs, mask] : filters) {
      if (!mask[refs[r]]) {
        keep = false;
        break;
      }
    }
    if (!keep) continue;
    size_t cell = static_cast<size_t>(w) * ncols + static_cast<size_t>(c);
    ++counts[cell];
    for (auto& acc : accumulators) acc.Add(cell, r);
  }

  for (size_t cell = 0; cell < ncells; ++cell) {
    if (counts[cell] == 0) continue;
    CellTuple tuple;
    tuple.reserve(accumulators.size());
    for (const auto& acc : accumulators) tuple.push_back(acc.Finish(cell, counts[cell]));
    out.cells.emplace(std::make_pair(row.axis.values[cell / ncols], col.axis.values[cell % ncols]),
                      std::move(tuple));
  }

  for (const auto& pred : applicable.predicates()) {
    FooterLine line{{}, pred.dim, pred.param, pred.op, pred.literals};
    auto owners = ctx.schema.FactsLinkedTo(pred.dim);
    if (owners.size() == 1) line.fact = owners.front();
    out.footer.push_back(std::move(line));
  }
  out.col_axis = std::move(col.axis);
  out.row_axis = std::move(row.axis);
  return out;
}

std::string FormatCell(const CellTuple& cell) {
  std::string out = "(";
  for (size_t i = 0; i < cell.size(); ++i) {
    if (i > 0) out += ", ";
    if (const double* d = std::get_if<double>(&cell[i])) {
      out += FormatNumber(*d);
    } else {
      const auto& set = std::get<std::vector<std::string>>(cell[i]);
      out += "{";
      for (size_t j = 0; j < set.size(); ++j) {
        if (j > 0) out += ", ";
        out += set[j];
      }
      out += "}";
    }
  }
  return out + ")";
}

namespace {

size_t DisplayWidth(std::string_view text) {
  size_t width = 0;
  for (char c : text) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++width;
  }
  return width;
}

std::string Pad(std::string_view text, size_t width) {
  std::string out(text);
  size_t w = DisplayWidth(text);
  if (w < width) out.append(width - w, ' ');
  return out;
}

std::string JoinLine(const std::vector<std::string>& cells, const std::vector<size_t>& widths) {
  std::string line;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) line += " | ";
    line += i < widths.size() ? Pad(cells[i], widths[i]) : cells[i];
  }
  while (!line.empty() && line.back() == ' ') line.pop_back();
  return line;
}

std::string AxisLabel(const Axis& axis) { return Capitalize(axis.dim) + " / " + axis.hier; }

}  // namespace

std::string RenderText(const NTable& table) {
  const auto& cols = table.col_axis.values;
  const auto& rows = table.row_axis.values;
  std::string measures;
  for (size_t i = 0; i < table.measures.size(); ++i) {
    if (i > 0) measures += ", ";
    measures += table.measures[i];
  }

  std::vector<size_t> widths(2 + cols.size(), 0);
  widths[0] = std::max(DisplayWidth(Capitalize(table.fact)), DisplayWidth(AxisLabel(table.row_axis)));
  widths[1] = std::max(DisplayWidth(table.col_axis.level), DisplayWidth(table.row_axis.level));
  for (const auto& r : rows) widths[1] = std::max(widths[1], DisplayWidth(r));
  for (size_t j = 0; j < cols.size(); ++j) {
    widths[2 + j] = DisplayWidth(cols[j]);
    for (const auto& r : rows) {
      if (const CellTuple* cell = table.Cell(r, cols[j])) {
        widths[2 + j] = std::max(widths[2 + j], DisplayWidth(FormatCell(*cell)));
      }
    }
  }

  std::vector<std::string> lines;
  lines.push_back(JoinLine({Capitalize(table.fact), AxisLabel(table.col_axis)}, widths));
  std::vector<std::string> header{"", table.col_axis.level};
  header.insert(header.end(), cols.begin(), cols.end());
  lines.push_back(JoinLine(header, widths));
  lines.push_back(
      JoinLine({AxisLabel(table.row_axis), table.row_axis.level, measures}, widths));
  for (const auto& r : rows) {
    std::vector<std::string> line{"", r};
    for (const auto& c : cols) {
      const CellTuple* cell = table.Cell(r, c);
      line.push_back(cell == nullptr ? "" : FormatCell(*cell));
    }
    lines.push_back(JoinLine(line, widths));
  }
  for (const auto& f : table.footer) lines.push_back(FooterText(f));

  std::string out;
  for (const auto& line : lines) out += line + "\n";
  return out;
}

namespace {

nlohmann::json EncodeAxis(const Axis& axis) {
  return {{"dim", axis.dim}, {"hier", axis.hier}, {"level", axis.level}, {"values", axis.values}};
}

Axis DecodeAxis(const nlohmann::json& doc) {
  return Axis{doc.at("dim").get<std::string>(), doc.at("hier").get<std::string>(),
              doc.at("level").get<std::string>(),
              doc.at("values").get<std::vector<std::string>>()};
}

nlohmann::json EncodeLiteral(const Literal& lit) {
  if (const double* d = std::get_if<double>(&lit)) return *d;
  return std::get<std::string>(lit);
}

Literal DecodeLiteral(const nlohmann::json& doc) {
  if (doc.is_number()) return doc.get<double>();
  if (doc.is_string()) return doc.get<std::string>();
  throw OlapError(ErrorCode::kBadRequest, "literal must be a number or a string");
}

}  // namespace

nlohmann::json Encode(const NTable& table) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& r : table.row_axis.values) {
    for (const auto& c : table.col_axis.values) {
      const CellTuple* cell = table.Cell(r, c);
      if (cell == nullptr) continue;
      nlohmann::json values = nlohmann::json::array();
      for (const auto& v : *cell) {
        if (const double* d = std::get_if<double>(&v)) values.push_back(*d);
        else values.push_back(std::get<std::vector<std::string>>(v));
      }
      cells.push_back({{"row", r}, {"col", c}, {"values", std::move(values)}});
    }
  }
  nlohmann::json footer = nlohmann::json::array();
  for (const auto& f : table.footer) {
    nlohmann::json line = {{"dim", f.dim},
                           {"param", f.param},
                           {"op", std::string(ComparatorSymbol(f.op))}};
    if (f.op == Comparator::kIn) {
      nlohmann::json list = nlohmann::json::array();
      for (const auto& lit : f.literals) list.push_back(EncodeLiteral(lit));
      line["literal"] = std::move(list);
    } else {
      line["literal"] = EncodeLiteral(f.literals.front());
    }
    if (!f.fact.empty()) line["fact"] = f.fact;
    footer.push_back(std::move(line));
  }
  return {{"fact", table.fact},
          {"measures", table.measures},
          {"colAxis", EncodeAxis(table.col_axis)},
          {"rowAxis", EncodeAxis(table.row_axis)},
          {"cells", std::move(cells)},
          {"footer", std::move(footer)}};
}

NTable Decode(const nlohmann::json& doc) {
  NTable out;
  out.fact = doc.at("fact").get<std::string>();
  out.measures = doc.at("measures").get<std::vector<std::string>>();
  out.col_axis = DecodeAxis(doc.at("colAxis"));
  out.row_axis = DecodeAxis(doc.at("rowAxis"));
  for (const auto& cell : doc.at("cells")) {
    CellTuple tuple;
    for (const auto& v : cell.at("values")) {
      if (v.is_array()) tuple.emplace_back(v.get<std::vector<std::string>>());
      else tuple.emplace_back(v.get<double>());
    }
    out.cells.emplace(std::make_pair(cell.at("row").get<std::string>(),
                                     cell.at("col").get<std::string>()),
                      std::move(tuple));
  }
  for (const auto& f : doc.at("footer")) {
    FooterLine line;
    line.dim = f.at("dim").get<std::string>();
    line.param = f.at("param").get<std::string>();
    auto op = ComparatorFromSymbol(f.at("op").get<std::string>());
    if (!op) throw OlapError(ErrorCode::kBadRequest, "unknown comparator in footer");
    line.op = *op;
    const auto& literal = f.at("literal");
    if (literal.is_array()) {
      for (const auto& lit : literal) line.literals.push_back(DecodeLiteral(lit));
    } else {
      line.literals.push_back(DecodeLiteral(literal));
    }
    if (f.contains("fact")) line.fact = f.at("fact").get<std::string>();
    out.footer.push_back(std::move(line));
  }
  return out;
}

}  // namespace ntable
}  // namespace constellation
