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

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "constellation/restriction.h"
#include "constellation/schema.h"

namespace constellation {

// Dictionary-encoded attribute values of one dimension parameter. Dictionary
// order is first appearance, which is also the default display ordering.
class AttributeColumn {
 public:
  void Append(std::string_view value);
  uint32_t Intern(std::string_view value);
  void AppendCode(uint32_t code) { codes_.push_back(code); }

  const std::vector<std::string>& dictionary() const { return dictionary_; }
  const std::vector<uint32_t>& codes() const { return codes_; }
  size_t size() const { return codes_.size(); }
  std::string_view value(size_t member) const { return dictionary_[codes_[member]]; }
  std::optional<uint32_t> Find(std::string_view value) const;

  // True when every value parses as a finite number (vacuously for no values).
  bool numeric() const { return numeric_; }
  double number(uint32_t code) const { return numbers_[code]; }

 private:
  std::vector<std::string> dictionary_;
  std::unordered_map<std::string, uint32_t> index_;
  std::vector<uint32_t> codes_;
  std::vector<double> numbers_;
  bool numeric_ = true;
};

// Members of one dimension; member identity is the row index.
struct DimensionTable {
  std::string name;
  std::string key;
  // Columns in file/declaration order; `all` is implicit.
  std::vector<std::string> attribute_order;
  std::map<std::string, AttributeColumn, std::less<>> columns;
  size_t member_count = 0;

  bool HasColumn(std::string_view attribute) const;
  // nullptr for `all` and unknown attributes.
  const AttributeColumn* Column(std::string_view attribute) const;
  // "All" for `all`.
  std::string_view Value(size_t member, std::string_view attribute) const;
};

struct MeasureColumn {
  MeasureKind kind = MeasureKind::kNumeric;
  std::vector<double> numbers;
  std::vector<std::string> texts;

  size_t size() const { return kind == MeasureKind::kNumeric ? numbers.size() : texts.size(); }
  std::string Text(size_t row) const;
};

// Fact rows: one member reference per linked dimension plus measure columns.
struct FactTable {
  std::string name;
  std::vector<std::string> dims;
  std::map<std::string, std::vector<uint32_t>, std::less<>> refs;
  std::map<std::string, MeasureColumn, std::less<>> measures;
  size_t row_count = 0;

  const std::vector<uint32_t>* Refs(std::string_view dim) const;
  const MeasureColumn* Measure(std::string_view measure) const;
};

// Adjacent-pair roll-up function rho(from -> to) of one hierarchy.
struct RollUpMap {
  std::string from;
  std::string to;
  std::unordered_map<std::string, std::string> map;
};

// Immutable dimension and fact instances. Tables are shared between stores so
// that deriving a store (push, pull, combine) copies only what changes.
class InstanceStore {
 public:
  using DimensionMap = std::map<std::string, std::shared_ptr<const DimensionTable>, std::less<>>;
  using FactMap = std::map<std::string, std::shared_ptr<const FactTable>, std::less<>>;

  InstanceStore(ConstellationSchema schema, DimensionMap dims, FactMap facts);

  // Schema the store was loaded with; contexts carry their own evolving schema.
  const ConstellationSchema& schema() const { return schema_; }

  bool HasDimension(std::string_view dim) const { return dims_.find(dim) != dims_.end(); }
  bool HasFact(std::string_view fact) const { return facts_.find(fact) != facts_.end(); }
  const DimensionTable& dimension(std::string_view dim) const;
  const FactTable& fact(std::string_view fact) const;
  const std::shared_ptr<const DimensionTable>& dimension_ptr(std::string_view dim) const;
  const std::shared_ptr<const FactTable>& fact_ptr(std::string_view fact) const;
  const DimensionMap& dimensions() const { return dims_; }
  const FactMap& facts() const { return facts_; }

  // Maps for every adjacent pair of `hierarchy` of `dim` in the load schema.
  const std::vector<RollUpMap>& rollup_maps(std::string_view dim, std::string_view hierarchy) const;

  InstanceStore WithDimension(std::shared_ptr<const DimensionTable> table) const;
  InstanceStore WithFact(std::shared_ptr<const FactTable> table) const;

 private:
  using RollUpIndex = std::map<std::pair<std::string, std::string>, std::vector<RollUpMap>>;

  ConstellationSchema schema_;
  DimensionMap dims_;
  FactMap facts_;
  std::shared_ptr<const RollUpIndex> rollups_;
};

// rho^{H(from -> to)}(value), composed along the hierarchy.
std::string RollUpValue(const InstanceStore& store, std::string_view dim,
                        std::string_view hierarchy, std::string_view from, std::string_view to,
                        std::string_view value);

// One error per (hierarchy, adjacent pair, value) mapped to two upper values.
ValidationReport CheckRollupFunctions(const InstanceStore& store);

// dom(param) in display order.
std::vector<std::string> ParameterDomain(const InstanceStore& store, std::string_view dim,
                                         std::string_view param);

// Indices of the rows of `fact` satisfying every predicate.
std::vector<uint32_t> FactRows(const InstanceStore& store, std::string_view fact,
                               const RestrictionSet& restrictions);

// Throws UnknownParameter or TypeMismatch when `pred` cannot be evaluated.
void CheckPredicate(const DimensionTable& table, const Predicate& pred);

// 1 for members satisfying every predicate (all of which must target `table`).
std::vector<char> MemberMask(const DimensionTable& table, std::span<const Predicate> preds);

// First (lower value, upper value, other upper value) violating from -> to.
struct DependencyConflict {
  std::string from_value;
  std::string to_value;
  std::string other_to_value;
};
std::optional<DependencyConflict> FindDependencyConflict(const DimensionTable& table,
                                                         std::string_view from,
                                                         std::string_view to);

}  // namespace constellation
