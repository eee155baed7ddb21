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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "constellation/value.h"

namespace constellation {

enum class Comparator { kEq, kNe, kLt, kLe, kGt, kGe, kIn };

// "=", "!=", "<", "<=", ">", ">=", "IN".
std::string_view ComparatorSymbol(Comparator op);
std::optional<Comparator> ComparatorFromSymbol(std::string_view symbol);
bool IsOrdered(Comparator op);

// dim.param <op> literal; kIn carries the list, the others exactly one literal.
struct Predicate {
  std::string dim;
  std::string param;
  Comparator op = Comparator::kEq;
  std::vector<Literal> literals;

  friend bool operator==(const Predicate&, const Predicate&) = default;
};

// "param=literal" / "param IN (a, b)" with literals in source form.
std::string PredicateText(const Predicate& pred);

// A conjunction of predicates.
class RestrictionSet {
 public:
  RestrictionSet() = default;

  const std::vector<Predicate>& predicates() const { return predicates_; }
  bool empty() const { return predicates_.empty(); }

  // Conjoins `pred`: exact duplicates are dropped and two different equalities
  // on one (dim, param) collapse into an unsatisfiable IN ().
  void Add(Predicate pred);

  bool Contains(const Predicate& pred) const;
  bool References(std::string_view dim, std::string_view param) const;
  bool ReferencesDimension(std::string_view dim) const;

  friend bool operator==(const RestrictionSet&, const RestrictionSet&) = default;

 private:
  std::vector<Predicate> predicates_;
};

}  // namespace constellation
