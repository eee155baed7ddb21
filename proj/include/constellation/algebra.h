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
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "constellation/instance_store.h"
#include "constellation/restriction.h"
#include "constellation/schema.h"

namespace constellation {

// Immutable analysis state. Operators return new contexts; the instance store
// is shared and only replaced (copy-on-write) by push, pull and combine.
struct AnalysisContext {
  ConstellationSchema schema;
  // Display level of every dimension; always a parameter of its current hierarchy.
  std::map<std::string, std::string> display_levels;
  RestrictionSet restrictions;
  // Switch overrides of the store's first-appearance ordering, keyed by (dim, param).
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> orderings;
  std::shared_ptr<const InstanceStore> store;

  // Initial context over a loaded store: its schema, default display levels.
  static AnalysisContext Initial(std::shared_ptr<const InstanceStore> store);

  const std::string& current_fact() const { return schema.facts.front().name; }
  const std::string& display_level(std::string_view dim) const;

  // Effective display ordering of dom(param).
  std::vector<std::string> Ordering(std::string_view dim, std::string_view param) const;

  // Store pointer identity, everything else structurally.
  friend bool operator==(const AnalysisContext&, const AnalysisContext&) = default;
};

// The parameter immediately below `all` in the current hierarchy of `dim`.
std::string DefaultDisplayLevel(const Dimension& dim);

namespace algebra {

// Swaps two dimensions in Param(fact).
AnalysisContext DRotate(const AnalysisContext& ctx, std::string_view fact, std::string_view dim_a,
                        std::string_view dim_b);

// Swaps two hierarchies of a dimension.
AnalysisContext HRotate(const AnalysisContext& ctx, std::string_view dim, std::string_view hier_a,
                        std::string_view hier_b);

// Swaps two facts.
AnalysisContext FRotate(const AnalysisContext& ctx, std::string_view fact_a,
                        std::string_view fact_b);

// Swaps two positions of a parameter of the current hierarchy.
AnalysisContext Switch(const AnalysisContext& ctx, std::string_view dim, std::string_view param,
                       const Literal& value_a, const Literal& value_b);

// Moves the display level of `dim` to a finer parameter. A parameter absent
// from the current hierarchy is inserted just below the display level once the
// instance data shows it fits there functionally.
AnalysisContext DrillDown(const AnalysisContext& ctx, std::string_view dim,
                          std::string_view param);

// Moves the display level of `dim` to a coarser parameter (possibly `all`).
AnalysisContext RollUp(const AnalysisContext& ctx, std::string_view dim, std::string_view param);

// Converts a dimension parameter into a measure of `fact`.
AnalysisContext Push(const AnalysisContext& ctx, std::string_view dim, std::string_view param,
                     std::string_view fact);

// Converts a measure of `fact` into a parameter of `dim`; members of `dim` are
// refined into (member, measure value) pairs.
AnalysisContext Pull(const AnalysisContext& ctx, std::string_view fact, std::string_view measure,
                     std::string_view dim);

// One star context per fact.
std::vector<AnalysisContext> TSplit(const AnalysisContext& ctx);

// One sliced context per value of dom(param); requires a single-fact schema.
std::vector<AnalysisContext> Split(const AnalysisContext& ctx, std::string_view dim,
                                   std::string_view param);

// Conjoins `pred` into the restrictions.
AnalysisContext Slice(const AnalysisContext& ctx, std::string_view dim, Predicate pred);

enum class SetOp { kUnion, kIntersect, kDifference };
std::string_view SetOpName(SetOp op);

// Row-set operation on the current fact, rows keyed by their dimension
// references.
AnalysisContext Combine(SetOp op, const AnalysisContext& a, const AnalysisContext& b);

// Makes `fact` current and, optionally, `dims` its current dimensions.
AnalysisContext Display(const AnalysisContext& ctx, std::string_view fact,
                        const std::vector<std::string>& dims);

// Restricted rows of the current fact (restrictions on unlinked dimensions ignored).
std::vector<uint32_t> RestrictedRows(const AnalysisContext& ctx);

// Predicates of `ctx` that apply to `fact`.
RestrictionSet ApplicableRestrictions(const AnalysisContext& ctx, std::string_view fact);

}  // namespace algebra
}  // namespace constellation
