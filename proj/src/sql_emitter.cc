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

#include "constellation/sql_emitter.h"

#include <cctype>
#include <set>

#include "constellation/errors.h"
#include "constellation/value.h"

namespace constellation::sql {

std::string MangleName(std::string_view name) {
  std::string out;
  out.reserve(name.size());
  for (char c : name) {
    auto u = static_cast<unsigned char>(c);
    out.push_back(std::isalnum(u) ? static_cast<char>(std::tolower(u)) : '_');
  }
  return out;
}

std::string Quote(std::string_view name) { return "\"" + MangleName(name) + "\""; }

std::string StringLiteral(std::string_view text) {
  std::string out = "'";
  for (char c : text) {
    if (c == '\'') out.push_back('\'');
    out.push_back(c);
  }
  out.push_back('\'');
  return out;
}

namespace {

constexpr std::string_view kText = "VARCHAR(255)";
constexpr std::string_view kNumber = "DOUBLE PRECISION";

std::string_view AttributeType(const InstanceStore* store, const Dimension& dim,
                               std::string_view attribute) {
  if (store == nullptr || !store->HasDimension(dim.name)) return kText;
  const AttributeColumn* column = store->dimension(dim.name).Column(attribute);
  return column != nullptr && column->size() > 0 && column->numeric() ? kNumber : kText;
}

std::string Column(std::string_view table, std::string_view column) {
  return Quote(table) + "." + Quote(column);
}

}  // namespace

std::string EmitDdl(const ConstellationSchema& schema, const InstanceStore* store) {
  std::string out;
  for (const auto& dim : schema.dims) {
    out += "CREATE TABLE " + Quote(dim.name) + " (\n";
    bool first = true;
    for (const auto& a : dim.attributes) {
      if (a == kAllParam) continue;
      if (!first) out += ",\n";
      first = false;
      out += "  " + Quote(a) + " " + std::string(AttributeType(store, dim, a)) +
             (a == dim.key ? " PRIMARY KEY" : " NOT NULL");
    }
    out += "\n);\n";
  }
  for (const auto& fact : schema.facts) {
    out += "CREATE TABLE " + Quote(fact.name) + " (\n";
    bool first = true;
    for (const auto& d : schema.Linked(fact.name)) {
      const Dimension* dim = schema.FindDimension(d);
      if (!first) out += ",\n";
      first = false;
      out += "  " + Quote(d + "_id") + " " + std::string(AttributeType(store, *dim, dim->key)) +
             " NOT NULL REFERENCES " + Quote(d) + " (" + Quote(dim->key) + ")";
    }
    for (const auto& m : fact.measures) {
      if (!first) out += ",\n";
      first = false;
      out += "  " + Quote(m.name) + " " +
             std::string(m.kind == MeasureKind::kNumeric ? kNumber : kText) + " NOT NULL";
    }
    out += "\n);\n";
  }
  return out;
}

namespace {

struct ColumnInfo {
  std::string expr;  // qualified column, or 'All'
  bool numeric = false;
};

ColumnInfo ResolveColumn(const AnalysisContext& ctx, std::string_view dim, std::string_view param) {
  if (param == kAllParam) return {StringLiteral(kAllValue), false};
  const AttributeColumn* column = ctx.store->dimension(dim).Column(param);
  return {Column(dim, param), column != nullptr && column->size() > 0 && column->numeric()};
}

// Literal as compared against `col`; nullopt when it can never match.
std::optional<std::string> SqlLiteral(const ColumnInfo& col, const Literal& lit) {
  if (col.numeric) {
    std::optional<double> number;
    if (const double* d = std::get_if<double>(&lit)) {
      number = *d;
    } else {
      number = ParseNumber(std::get<std::string>(lit));
    }
    if (!number) return std::nullopt;
    return FormatNumber(*number);
  }
  return StringLiteral(LiteralText(lit));
}

std::string Condition(const ColumnInfo& col, const Predicate& pred) {
  if (pred.op == Comparator::kIn) {
    std::string list;
    for (const auto& lit : pred.literals) {
      auto sql = SqlLiteral(col, lit);
      if (!sql) continue;
      if (!list.empty()) list += ", ";
      list += *sql;
    }
    if (list.empty()) return "1 = 0";
    return col.expr + " IN (" + list + ")";
  }
  auto sql = SqlLiteral(col, pred.literals.front());
  if (!sql) return pred.op == Comparator::kNe ? "1 = 1" : "1 = 0";
  std::string_view op = pred.op == Comparator::kNe ? "<>" : ComparatorSymbol(pred.op);
  return col.expr + " " + std::string(op) + " " + *sql;
}

std::string Aggregate(const MeasureDef& m, const std::string& column) {
  switch (m.agg) {
    case AggFunc::kSum: return "SUM(" + column + ")";
    case AggFunc::kMin: return "MIN(" + column + ")";
    case AggFunc::kMax: return "MAX(" + column + ")";
    case AggFunc::kCount: return "COUNT(" + column + ")";
    case AggFunc::kAvg: return "AVG(" + column + ")";
    case AggFunc::kDistinctSet:
      return "COUNT(DISTINCT " + column + ") /* distinct_set: the n-table shows the value set */";
  }
  return column;
}

std::string Ranking(const AnalysisContext& ctx, const std::string& dim, const std::string& param,
                    const ColumnInfo& col) {
  std::string out = "CASE " + col.expr;
  auto order = ctx.Ordering(dim, param);
  for (size_t i = 0; i < order.size(); ++i) {
    auto lit = SqlLiteral(col, Literal(order[i]));
    out += " WHEN " + lit.value_or(StringLiteral(order[i])) + " THEN " + std::to_string(i);
  }
  return out + " ELSE " + std::to_string(order.size()) + " END";
}

}  // namespace

std::string EmitQuery(const AnalysisContext& ctx) {
  const Fact& fact = ctx.schema.facts.front();
  if (fact.measures.empty()) {
    throw OlapError(ErrorCode::kEmptyMeasureSet, "fact '" + fact.name + "' has no measures to display");
  }
  const auto& linked = ctx.schema.Linked(fact.name);
  const std::string col_dim = linked.at(0);
  const std::string row_dim = linked.at(1);
  const std::string col_level = ctx.display_level(col_dim);
  const std::string row_level = ctx.display_level(row_dim);
  const ColumnInfo col = ResolveColumn(ctx, col_dim, col_level);
  const ColumnInfo row = ResolveColumn(ctx, row_dim, row_level);
  RestrictionSet restrictions = algebra::ApplicableRestrictions(ctx, fact.name);

  std::string out = "SELECT " + col.expr + " AS " + Quote(col_dim + "_" + col_level) + ",\n";
  out += "       " + row.expr + " AS " + Quote(row_dim + "_" + row_level);
  for (const auto& m : fact.measures) {
    out += ",\n       " + Aggregate(m, Column(fact.name, m.name)) + " AS " + Quote(m.name);
  }
  out += "\nFROM " + Quote(fact.name);

  std::set<std::string> restricted;
  for (const auto& p : restrictions.predicates()) restricted.insert(p.dim);
  for (const auto& d : linked) {
    if (d != col_dim && d != row_dim && !restricted.contains(d)) continue;
    const Dimension* dim = ctx.schema.FindDimension(d);
    out += "\n  JOIN " + Quote(d) + " ON " + Column(fact.name, d + "_id") + " = " + Column(d, dim->key);
  }

  const auto& preds = restrictions.predicates();
  for (size_t i = 0; i < preds.size(); ++i) {
    out += i == 0 ? "\nWHERE " : "\n  AND ";
    out += Condition(ResolveColumn(ctx, preds[i].dim, preds[i].param), preds[i]);
  }

  std::vector<std::string> groups;
  std::vector<std::string> rankings;
  if (col_level != kAllParam) {
    groups.push_back(col.expr);
    rankings.push_back(Ranking(ctx, col_dim, col_level, col));
  }
  if (row_level != kAllParam) {
    groups.push_back(row.expr);
    rankings.push_back(Ranking(ctx, row_dim, row_level, row));
  }
  if (groups.empty()) {
    // Without groups an aggregate query yields one row even over no input.
    out += "\nHAVING COUNT(*) > 0";
  } else {
    out += "\nGROUP BY ";
    for (size_t i = 0; i < groups.size(); ++i) out += (i > 0 ? ", " : "") + groups[i];
    out += "\nORDER BY ";
    for (size_t i = 0; i < rankings.size(); ++i) out += (i > 0 ? ",\n         " : "") + rankings[i];
  }
  return out + ";\n";
}

}  // namespace constellation::sql
