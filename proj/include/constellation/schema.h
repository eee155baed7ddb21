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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace constellation {

enum class MeasureKind { kNumeric, kText };
enum class AggFunc { kSum, kMin, kMax, kCount, kAvg, kDistinctSet };

std::string_view MeasureKindName(MeasureKind kind);
std::string_view AggFuncName(AggFunc agg);
std::optional<MeasureKind> MeasureKindFromName(std::string_view name);
std::optional<AggFunc> AggFuncFromName(std::string_view name);

// sum for numeric measures, distinct_set for text measures.
AggFunc DefaultAgg(MeasureKind kind);

struct MeasureDef {
  std::string name;
  MeasureKind kind = MeasureKind::kNumeric;
  AggFunc agg = AggFunc::kSum;

  friend bool operator==(const MeasureDef&, const MeasureDef&) = default;
};

struct Fact {
  std::string name;
  std::vector<MeasureDef> measures;

  const MeasureDef* FindMeasure(std::string_view measure) const;

  friend bool operator==(const Fact&, const Fact&) = default;
};

// Parameters ordered finest to coarsest, terminated by `all`.
struct Hierarchy {
  std::string name;
  std::vector<std::string> params;

  bool Contains(std::string_view param) const;
  // Position of `param`, or -1.
  int IndexOf(std::string_view param) const;

  friend bool operator==(const Hierarchy&, const Hierarchy&) = default;
};

struct Dimension {
  std::string name;
  std::string key;
  // Declaration order; includes the key and `all`.
  std::vector<std::string> attributes;
  // First element is the current hierarchy.
  std::vector<Hierarchy> hierarchies;

  bool HasAttribute(std::string_view attribute) const;
  const Hierarchy* FindHierarchy(std::string_view hierarchy) const;
  const Hierarchy& current() const { return hierarchies.front(); }

  friend bool operator==(const Dimension&, const Dimension&) = default;
};

// A constellation: ordered facts (first is current), dimensions, and the
// ordered list of dimensions linked to each fact (first two are current).
struct ConstellationSchema {
  std::string name;
  std::vector<Fact> facts;
  std::vector<Dimension> dims;
  std::map<std::string, std::vector<std::string>> param;

  const Fact* FindFact(std::string_view fact) const;
  Fact* FindFact(std::string_view fact);
  const Dimension* FindDimension(std::string_view dim) const;
  Dimension* FindDimension(std::string_view dim);

  // Param(fact); empty when the fact is unknown.
  const std::vector<std::string>& Linked(std::string_view fact) const;
  bool IsLinked(std::string_view fact, std::string_view dim) const;
  // Facts whose Param list contains `dim`, in fact order.
  std::vector<std::string> FactsLinkedTo(std::string_view dim) const;

  friend bool operator==(const ConstellationSchema&, const ConstellationSchema&) = default;
};

enum class Severity { kError, kWarning };

struct Issue {
  Severity severity = Severity::kError;
  std::string location;
  std::string message;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Issue> issues;

  void Add(Severity severity, std::string location, std::string message);
};

// Total and deterministic; every violated structural rule becomes an issue.
ValidationReport ValidateSchema(const ConstellationSchema& schema);

struct CurrentElements {
  std::string fact;
  std::string col_dim;
  std::string row_dim;
  std::string col_hierarchy;
  std::string row_hierarchy;

  friend bool operator==(const CurrentElements&, const CurrentElements&) = default;
};

// Requires a valid schema.
CurrentElements GetCurrentElements(const ConstellationSchema& schema);

}  // namespace constellation
