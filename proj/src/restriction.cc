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

#include "constellation/restriction.h"

#include <algorithm>

namespace constellation {

std::string_view ComparatorSymbol(Comparator op) {
  switch (op) {
    case Comparator::kEq: return "=";
    case Comparator::kNe: return "!=";
    case Comparator::kLt: return "<";
    case Comparator::kLe: return "<=";
    case Comparator::kGt: return ">";
    case Comparator::kGe: return ">=";
    case Comparator::kIn: return "IN";
  }
  return "=";
}

std::optional<Comparator> ComparatorFromSymbol(std::string_view symbol) {
  if (symbol == "=") return Comparator::kEq;
  if (symbol == "!=" || symbol == "<>") return Comparator::kNe;
  if (symbol == "<") return Comparator::kLt;
  if (symbol == "<=") return Comparator::kLe;
  if (symbol == ">") return Comparator::kGt;
  if (symbol == ">=") return Comparator::kGe;
  if (symbol == "IN" || symbol == "in") return Comparator::kIn;
  return std::nullopt;
}

bool IsOrdered(Comparator op) {
  return op == Comparator::kLt || op == Comparator::kLe || op == Comparator::kGt ||
         op == Comparator::kGe;
}

std::string PredicateText(const Predicate& pred) {
  std::string out = pred.param;
  if (pred.op == Comparator::kIn) {
    out += " IN (";
    for (size_t i = 0; i < pred.literals.size(); ++i) {
      if (i > 0) out += ", ";
      out += QuoteLiteral(pred.literals[i]);
    }
    out += ")";
    return out;
  }
  out += ComparatorSymbol(pred.op);
  if (!pred.literals.empty()) out += QuoteLiteral(pred.literals.front());
  return out;
}

void RestrictionSet::Add(Predicate pred) {
  if (Contains(pred)) return;
  if (pred.op == Comparator::kEq) {
    auto clash = std::find_if(predicates_.begin(), predicates_.end(), [&](const Predicate& p) {
      return p.op == Comparator::kEq && p.dim == pred.dim && p.param == pred.param;
    });
    if (clash != predicates_.end()) {
      if (LiteralText(clash->literals.front()) == LiteralText(pred.literals.front())) return;
      clash->op = Comparator::kIn;
      clash->literals.clear();
      return;
    }
  }
  predicates_.push_back(std::move(pred));
}

bool RestrictionSet::Contains(const Predicate& pred) const {
  return std::find(predicates_.begin(), predicates_.end(), pred) != predicates_.end();
}

bool RestrictionSet::References(std::string_view dim, std::string_view param) const {
  return std::any_of(predicates_.begin(), predicates_.end(), [&](const Predicate& p) {
    return p.dim == dim && p.param == param;
  });
}

bool RestrictionSet::ReferencesDimension(std::string_view dim) const {
  return std::any_of(predicates_.begin(), predicates_.end(),
                     [&](const Predicate& p) { return p.dim == dim; });
}

}  // namespace constellation
