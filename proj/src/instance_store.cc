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

#include "constellation/instance_store.h"

#include <set>

#include "constellation/errors.h"
#include "constellation/value.h"

namespace constellation {

void AttributeColumn::Append(std::string_view value) { codes_.push_back(Intern(value)); }

uint32_t AttributeColumn::Intern(std::string_view value) {
  auto it = index_.find(std::string(value));
  if (it != index_.end()) return it->second;
  auto code = static_cast<uint32_t>(dictionary_.size());
  dictionary_.emplace_back(value);
  index_.emplace(std::string(value), code);
  auto number = ParseNumber(value);
  numbers_.push_back(number.value_or(0.0));
  if (!number) numeric_ = false;
  return code;
}

std::optional<uint32_t> AttributeColumn::Find(std::string_view value) const {
  auto it = index_.find(std::string(value));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool DimensionTable::HasColumn(std::string_view attribute) const {
  return attribute == kAllParam || columns.find(attribute) != columns.end();
}

const AttributeColumn* DimensionTable::Column(std::string_view attribute) const {
  auto it = columns.find(attribute);
  return it == columns.end() ? nullptr : &it->second;
}

std::string_view DimensionTable::Value(size_t member, std::string_view attribute) const {
  if (attribute == kAllParam) return kAllValue;
  const AttributeColumn* column = Column(attribute);
  if (column == nullptr) {
    throw OlapError(ErrorCode::kUnknownParameter,
                    "dimension '" + name + "' has no parameter '" + std::string(attribute) + "'");
  }
  return column->value(member);
}

std::string MeasureColumn::Text(size_t row) const {
  return kind == MeasureKind::kNumeric ? FormatNumber(numbers[row]) : texts[row];
}

const std::vector<uint32_t>* FactTable::Refs(std::string_view dim) const {
  auto it = refs.find(dim);
  return it == refs.end() ? nullptr : &it->second;
}

const MeasureColumn* FactTable::Measure(std::string_view measure) const {
  auto it = measures.find(measure);
  return it == measures.end() ? nullptr : &it->second;
}

InstanceStore::InstanceStore(ConstellationSchema schema, DimensionMap dims, FactMap facts)
    : schema_(std::move(schema)), dims_(std::move(dims)), facts_(std::move(facts)) {
  auto index = std::make_shared<RollUpIndex>();
  for (const auto& dim : schema_.dims) {
    auto it = dims_.find(dim.name);
    if (it == dims_.end()) continue;
    const DimensionTable& table = *it->second;
    for (const auto& h : dim.hierarchies) {
      std::vector<RollUpMap> maps;
      for (size_t i = 0; i + 1 < h.params.size(); ++i) {
        RollUpMap map{h.params[i], h.params[i + 1], {}};
        if (table.HasColumn(map.from) && table.HasColumn(map.to)) {
          for (size_t m = 0; m < table.member_count; ++m) {
            map.map.emplace(std::string(table.Value(m, map.from)),
                            std::string(table.Value(m, map.to)));
          }
        }
        maps.push_back(std::move(map));
      }
      (*index)[{dim.name, h.name}] = std::move(maps);
    }
  }
  rollups_ = std::move(index);
}

const DimensionTable& InstanceStore::dimension(std::string_view dim) const {
  return *dimension_ptr(dim);
}

const FactTable& InstanceStore::fact(std::string_view fact) const { return *fact_ptr(fact); }

const std::shared_ptr<const DimensionTable>& InstanceStore::dimension_ptr(
    std::string_view dim) const {
  auto it = dims_.find(dim);
  if (it == dims_.end()) {
    throw OlapError(ErrorCode::kUnknownDimension, "unknown dimension '" + std::string(dim) + "'");
  }
  return it->second;
}

const std::shared_ptr<const FactTable>& InstanceStore::fact_ptr(std::string_view fact) const {
  auto it = facts_.find(fact);
  if (it == facts_.end()) {
    throw OlapError(ErrorCode::kUnknownFact, "unknown fact '" + std::string(fact) + "'");
  }
  return it->second;
}

const std::vector<RollUpMap>& InstanceStore::rollup_maps(std::string_view dim,
                                                         std::string_view hierarchy) const {
  auto it = rollups_->find({std::string(dim), std::string(hierarchy)});
  if (it == rollups_->end()) {
    throw OlapError(ErrorCode::kUnknownHierarchy, "unknown hierarchy '" + std::string(hierarchy) +
                                                      "' of dimension '" + std::string(dim) + "'");
  }
  return it->second;
}

InstanceStore InstanceStore::WithDimension(std::shared_ptr<const DimensionTable> table) const {
  InstanceStore out = *this;
  out.dims_[table->name] = std::move(table);
  return out;
}

InstanceStore InstanceStore::WithFact(std::shared_ptr<const FactTable> table) const {
  InstanceStore out = *this;
  out.facts_[table->name] = std::move(table);
  return out;
}

std::string RollUpValue(const InstanceStore& store, std::string_view dim,
                        std::string_view hierarchy, std::string_view from, std::string_view to,
                        std::string_view value) {
  const Dimension* d = store.schema().FindDimension(dim);
  if (d == nullptr) {
    throw OlapError(ErrorCode::kUnknownDimension, "unknown dimension '" + std::string(dim) + "'");
  }
  const Hierarchy* h = d->FindHierarchy(hierarchy);
  if (h == nullptr) {
    throw OlapError(ErrorCode::kUnknownHierarchy,
                    "unknown hierarchy '" + std::string(hierarchy) + "'");
  }
  int lo = h->IndexOf(from);
  if (lo < 0) {
    throw OlapError(ErrorCode::kUnknownParameter, "parameter '" + std::string(from) +
                                                      "' is not in hierarchy '" + h->name + "'");
  }
  int hi = h->IndexOf(to);
  if (hi < lo) {
    throw OlapError(ErrorCode::kNotAnAncestor, "'" + std::string(to) + "' does not follow '" +
                                                   std::string(from) + "' in '" + h->name + "'");
  }
  const auto& maps = store.rollup_maps(dim, hierarchy);
  auto unknown = [&] {
    return OlapError(ErrorCode::kUnknownValue, "value '" + std::string(value) +
                                                   "' is not in dom(" + std::string(from) + ")");
  };
  if (lo == hi) {
    bool found = from == kAllParam ? value == kAllValue : false;
    if (from != kAllParam) {
      const AttributeColumn* column = store.dimension(dim).Column(from);
      found = column != nullptr && column->Find(value).has_value();
    }
    if (!found) throw unknown();
    return std::string(value);
  }
  std::string current(value);
  for (int i = lo; i < hi; ++i) {
    const auto& map = maps[static_cast<size_t>(i)].map;
    auto it = map.find(current);
    if (it == map.end()) throw unknown();
    current = it->second;
  }
  return current;
}

ValidationReport CheckRollupFunctions(const InstanceStore& store) {
  ValidationReport report;
  for (const auto& dim : store.schema().dims) {
    if (!store.HasDimension(dim.name)) continue;
    const DimensionTable& table = store.dimension(dim.name);
    for (const auto& h : dim.hierarchies) {
      for (size_t i = 0; i + 1 < h.params.size(); ++i) {
        const std::string& from = h.params[i];
        const std::string& to = h.params[i + 1];
        if (!table.HasColumn(from) || !table.HasColumn(to)) continue;
        std::unordered_map<std::string, std::string> seen;
        std::set<std::string> reported;
        for (size_t m = 0; m < table.member_count; ++m) {
          std::string lower(table.Value(m, from));
          std::string upper(table.Value(m, to));
          auto [it, inserted] = seen.emplace(lower, upper);
          if (!inserted && it->second != upper && reported.insert(lower).second) {
            report.Add(Severity::kError,
                       "dimensions[" + dim.name + "].hierarchies[" + h.name + "]",
                       from + " '" + lower + "' rolls up to both '" + it->second + "' and '" +
                           upper + "' in " + to);
          }
        }
      }
    }
  }
  return report;
}

std::vector<std::string> ParameterDomain(const InstanceStore& store, std::string_view dim,
                                         std::string_view param) {
  const DimensionTable& table = store.dimension(dim);
  if (param == kAllParam) return {std::string(kAllValue)};
  const AttributeColumn* column = table.Column(param);
  if (column == nullptr) {
    throw OlapError(ErrorCode::kUnknownParameter,
                    "dimension '" + std::string(dim) + "' has no parameter '" + std::string(param) + "'");
  }
  return column->dictionary();
}

namespace {

// Numeric reading of a literal, if it has one.
std::optional<double> LiteralNumber(const Literal& lit) {
  if (const double* d = std::get_if<double>(&lit)) return *d;
  return ParseNumber(std::get<std::string>(lit));
}

bool LiteralEquals(std::string_view text, std::optional<double> number, const Literal& lit) {
  if (number) {
    if (auto rhs = LiteralNumber(lit)) return *number == *rhs;
  }
  return text == LiteralText(lit);
}

bool Evaluate(std::string_view text, std::optional<double> number, const Predicate& pred) {
  switch (pred.op) {
    case Comparator::kEq:
      return LiteralEquals(text, number, pred.literals.front());
    case Comparator::kNe:
      return !LiteralEquals(text, number, pred.literals.front());
    case Comparator::kIn:
      for (const auto& lit : pred.literals) {
        if (LiteralEquals(text, number, lit)) return true;
      }
      return false;
    default: break;
  }
  double lhs = *number;
  double rhs = *LiteralNumber(pred.literals.front());
  switch (pred.op) {
    case Comparator::kLt: return lhs < rhs;
    case Comparator::kLe: return lhs <= rhs;
    case Comparator::kGt: return lhs > rhs;
    case Comparator::kGe: return lhs >= rhs;
    default: return false;
  }
}

}  // namespace

void CheckPredicate(const DimensionTable& table, const Predicate& pred) {
  if (!table.HasColumn(pred.param)) {
    throw OlapError(ErrorCode::kUnknownParameter,
                    "dimension '" + table.name + "' has no parameter '" + pred.param + "'");
  }
  if (pred.op != Comparator::kIn && pred.literals.size() != 1) {
    throw OlapError(ErrorCode::kTypeMismatch,
                    "comparator " + std::string(ComparatorSymbol(pred.op)) + " takes one literal");
  }
  if (IsOrdered(pred.op)) {
    const AttributeColumn* column = table.Column(pred.param);
    if (column == nullptr || !column->numeric()) {
      throw OlapError(ErrorCode::kTypeMismatch, "ordered comparison on text parameter '" +
                                                    table.name + "." + pred.param + "'");
    }
    if (!LiteralNumber(pred.literals.front())) {
      throw OlapError(ErrorCode::kTypeMismatch,
                      "ordered comparison needs a numeric literal, got " +
                          QuoteLiteral(pred.literals.front()));
    }
  }
}

std::vector<char> MemberMask(const DimensionTable& table, std::span<const Predicate> preds) {
  std::vector<char> mask(table.member_count, 1);
  for (const auto& pred : preds) {
    CheckPredicate(table, pred);
    if (pred.param == kAllParam) {
      if (!Evaluate(kAllValue, std::nullopt, pred)) std::fill(mask.begin(), mask.end(), 0);
      continue;
    }
    const AttributeColumn& column = *table.Column(pred.param);
    std::vector<char> pass(column.dictionary().size());
    for (uint32_t code = 0; code < pass.size(); ++code) {
      std::optional<double> number;
      if (column.numeric()) number = column.number(code);
      pass[code] = Evaluate(column.dictionary()[code], number, pred) ? 1 : 0;
    }
    const auto& codes = column.codes();
    for (size_t m = 0; m < mask.size(); ++m) {
      if (!pass[codes[m]]) mask[m] = 0;
    }
  }
  return mask;
}

std::vector<uint32_t> FactRows(const InstanceStore& store, std::string_view fact,
                               const RestrictionSet& restrictions) {
  const FactTable& table = store.fact(fact);
  std::map<std::string, std::vector<Predicate>> by_dim;
  for (const auto& pred : restrictions.predicates()) {
    if (table.Refs(pred.dim) == nullptr) {
      throw OlapError(ErrorCode::kUnknownParameter, "restriction on '" + pred.dim + "." +
                                                        pred.param + "' but '" + pred.dim +
                                                        "' is not linked to '" + std::string(fact) + "'");
    }
    by_dim[pred.dim].push_back(pred);
  }
  std::vector<std::pair<const std::vector<uint32_t>*, std::vector<char>>> filters;
  for (const auto& [dim, preds] : by_dim) {
    filters.emplace_back(table.Refs(dim), MemberMask(store.dimension(dim), preds));
  }
  std::vector<uint32_t> rows;
  for (uint32_t r = 0; r < table.row_count; ++r) {
    bool keep = true;
    for (const auto& [refs, mask] : filters) {
      if (!mask[(*refs)[r]]) {
        keep = false;
        break;
      }
    }
    if (keep) rows.push_back(r);
  }
  return rows;
}

std::optional<DependencyConflict> FindDependencyConflict(const DimensionTable& table,
                                                         std::string_view from,
                                                         std::string_view to) {
  if (!table.HasColumn(from)) {
    throw OlapError(ErrorCode::kUnknownParameter,
                    "dimension '" + table.name + "' has no parameter '" + std::string(from) + "'");
  }
  if (!table.HasColumn(to)) {
    throw OlapError(ErrorCode::kUnknownParameter,
                    "dimension '" + table.name + "' has no parameter '" + std::string(to) + "'");
  }
  std::unordered_map<std::string_view, std::string_view> seen;
  for (size_t m = 0; m < table.member_count; ++m) {
    std::string_view lower = table.Value(m, from);
    std::string_view upper = table.Value(m, to);
    auto [it, inserted] = seen.emplace(lower, upper);
    if (!inserted && it->second != upper) {
      return DependencyConflict{std::string(lower), std::string(it->second), std::string(upper)};
    }
  }
  return std::nullopt;
}

}  // namespace constellation
