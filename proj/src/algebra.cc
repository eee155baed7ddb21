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

#include "constellation/algebra.h"

#include <algorithm>
#include <unordered_map>

#include "constellation/errors.h"
#include "constellation/value.h"

namespace constellation {

namespace {

// Placeholder value of a pulled parameter for members without rows.
constexpr std::string_view kEmptySentinel = "\xE2\x88\x85";  // U+2205

[[noreturn]] void Fail(ErrorCode code, const std::string& message) {
  throw OlapError(code, message);
}

const Fact& RequireFact(const ConstellationSchema& schema, std::string_view fact) {
  const Fact* f = schema.FindFact(fact);
  if (f == nullptr) Fail(ErrorCode::kUnknownFact, "unknown fact '" + std::string(fact) + "'");
  return *f;
}

const Dimension& RequireDimension(const ConstellationSchema& schema, std::string_view dim) {
  const Dimension* d = schema.FindDimension(dim);
  if (d == nullptr) {
    Fail(ErrorCode::kUnknownDimension, "unknown dimension '" + std::string(dim) + "'");
  }
  return *d;
}

void RequireLinked(const ConstellationSchema& schema, std::string_view fact, std::string_view dim) {
  if (schema.FindDimension(dim) == nullptr) {
    Fail(ErrorCode::kUnknownDimension, "unknown dimension '" + std::string(dim) + "'");
  }
  if (!schema.IsLinked(fact, dim)) {
    Fail(ErrorCode::kNotLinked, "dimension '" + std::string(dim) + "' is not linked to fact '" +
                                    std::string(fact) + "'");
  }
}

void RequireAttribute(const Dimension& dim, std::string_view param) {
  if (!dim.HasAttribute(param)) {
    Fail(ErrorCode::kUnknownParameter,
         "dimension '" + dim.name + "' has no parameter '" + std::string(param) + "'");
  }
}

// Resets display levels that left their dimension's current hierarchy.
void RepairDisplayLevels(AnalysisContext& ctx) {
  for (const auto& dim : ctx.schema.dims) {
    auto it = ctx.display_levels.find(dim.name);
    if (it == ctx.display_levels.end() || !dim.current().Contains(it->second)) {
      ctx.display_levels[dim.name] = DefaultDisplayLevel(dim);
    }
  }
}

void RequireDependency(const DimensionTable& table, std::string_view from, std::string_view to) {
  if (auto conflict = FindDependencyConflict(table, from, to)) {
    Fail(ErrorCode::kFunctionalDependencyViolated,
         std::string(from) + " '" + conflict->from_value + "' maps to both '" +
             conflict->to_value + "' and '" + conflict->other_to_value + "' of " +
             std::string(to) + " in dimension '" + table.name + "'");
  }
}

Literal ValueLiteral(const DimensionTable& table, std::string_view param, const std::string& value) {
  const AttributeColumn* column = table.Column(param);
  if (column != nullptr && column->numeric()) {
    if (auto number = ParseNumber(value)) return *number;
  }
  return value;
}

}  // namespace

std::string DefaultDisplayLevel(const Dimension& dim) {
  const auto& params = dim.current().params;
  return params.size() >= 2 ? params[params.size() - 2] : params.front();
}

AnalysisContext AnalysisContext::Initial(std::shared_ptr<const InstanceStore> store) {
  AnalysisContext ctx;
  ctx.schema = store->schema();
  ctx.store = std::move(store);
  for (const auto& dim : ctx.schema.dims) {
    ctx.display_levels[dim.name] = DefaultDisplayLevel(dim);
  }
  return ctx;
}

const std::string& AnalysisContext::display_level(std::string_view dim) const {
  auto it = display_levels.find(std::string(dim));
  if (it == display_levels.end()) {
    Fail(ErrorCode::kUnknownDimension, "unknown dimension '" + std::string(dim) + "'");
  }
  return it->second;
}

std::vector<std::string> AnalysisContext::Ordering(std::string_view dim,
                                                   std::string_view param) const {
  auto it = orderings.find({std::string(dim), std::string(param)});
  if (it != orderings.end()) return it->second;
  return ParameterDomain(*store, dim, param);
}

namespace algebra {

AnalysisContext DRotate(const AnalysisContext& ctx, std::string_view fact, std::string_view dim_a,
                        std::string_view dim_b) {
  RequireFact(ctx.schema, fact);
  RequireLinked(ctx.schema, fact, dim_a);
  RequireLinked(ctx.schema, fact, dim_b);
  if (dim_a == dim_b) {
    Fail(ErrorCode::kSameDimension, "cannot rotate dimension '" + std::string(dim_a) +
                                        "' with itself");
  }
  AnalysisContext out = ctx;
  auto& linked = out.schema.param[std::string(fact)];
  auto a = std::find(linked.begin(), linked.end(), dim_a);
  auto b = std::find(linked.begin(), linked.end(), dim_b);
  std::iter_swap(a, b);
  return out;
}

AnalysisContext HRotate(const AnalysisContext& ctx, std::string_view dim, std::string_view hier_a,
                        std::string_view hier_b) {
  const Dimension& d = RequireDimension(ctx.schema, dim);
  for (auto h : {hier_a, hier_b}) {
    if (d.FindHierarchy(h) == nullptr) {
      Fail(ErrorCode::kUnknownHierarchy, "dimension '" + d.name + "' has no hierarchy '" +
                                             std::string(h) + "'");
    }
  }
  if (hier_a == hier_b) {
    Fail(ErrorCode::kSameHierarchy, "cannot rotate hierarchy '" + std::string(hier_a) +
                                        "' with itself");
  }
  AnalysisContext out = ctx;
  auto& hierarchies = out.schema.FindDimension(dim)->hierarchies;
  auto find = [&](std::string_view name) {
    return std::find_if(hierarchies.begin(), hierarchies.end(),
                        [&](const Hierarchy& h) { return h.name == name; });
  };
  std::iter_swap(find(hier_a), find(hier_b));
  RepairDisplayLevels(out);
  return out;
}

AnalysisContext FRotate(const AnalysisContext& ctx, std::string_view fact_a,
                        std::string_view fact_b) {
  RequireFact(ctx.schema, fact_a);
  RequireFact(ctx.schema, fact_b);
  if (fact_a == fact_b) {
    Fail(ErrorCode::kSameFact, "cannot rotate fact '" + std::string(fact_a) + "' with itself");
  }
  AnalysisContext out = ctx;
  auto& facts = out.schema.facts;
  auto find = [&](std::string_view name) {
    return std::find_if(facts.begin(), facts.end(), [&](const Fact& f) { return f.name == name; });
  };
  std::iter_swap(find(fact_a), find(fact_b));
  RepairDisplayLevels(out);
  return out;
}

AnalysisContext Switch(const AnalysisContext& ctx, std::string_view dim, std::string_view param,
                       const Literal& value_a, const Literal& value_b) {
  const Dimension& d = RequireDimension(ctx.schema, dim);
  RequireAttribute(d, param);
  if (!d.current().Contains(param)) {
    Fail(ErrorCode::kNotInCurrentHierarchy, "parameter '" + std::string(param) +
                                                "' is not in the current hierarchy '" +
                                                d.current().name + "'");
  }
  std::vector<std::string> order = ctx.Ordering(dim, param);
  auto locate = [&](const Literal& lit) {
    std::string text = LiteralText(lit);
    auto it = std::find(order.begin(), order.end(), text);
    if (it == order.end()) {
      Fail(ErrorCode::kUnknownValue, "value " + QuoteLiteral(lit) + " is not in dom(" +
                                         std::string(param) + ")");
    }
    return it;
  };
  auto a = locate(value_a);
  auto b = locate(value_b);
  std::iter_swap(a, b);
  AnalysisContext out = ctx;
  std::pair<std::string, std::string> key{std::string(dim), std::string(param)};
  if (order == ParameterDomain(*ctx.store, dim, param)) {
    out.orderings.erase(key);
  } else {
    out.orderings[key] = std::move(order);
  }
  return out;
}

AnalysisContext DrillDown(const AnalysisContext& ctx, std::string_view dim,
                          std::string_view param) {
  const Dimension& d = RequireDimension(ctx.schema, dim);
  RequireAttribute(d, param);
  const Hierarchy& h = d.current();
  const std::string& level = ctx.display_level(dim);
  int level_index = h.IndexOf(level);
  int index = h.IndexOf(param);
  AnalysisContext out = ctx;
  if (index >= 0) {
    if (index >= level_index) {
      Fail(ErrorCode::kNotFiner, "'" + std::string(param) + "' is not finer than '" + level +
                                     "' in '" + h.name + "'");
    }
  } else {
    if (level_index == 0) {
      Fail(ErrorCode::kNotFiner, "nothing is finer than the key '" + level + "'");
    }
    const DimensionTable& table = ctx.store->dimension(dim);
    RequireDependency(table, h.params[static_cast<size_t>(level_index - 1)], param);
    RequireDependency(table, param, level);
    auto& params = out.schema.FindDimension(dim)->hierarchies.front().params;
    params.insert(params.begin() + level_index, std::string(param));
  }
  out.display_levels[std::string(dim)] = std::string(param);
  return out;
}

AnalysisContext RollUp(const AnalysisContext& ctx, std::string_view dim, std::string_view param) {
  const Dimension& d = RequireDimension(ctx.schema, dim);
  RequireAttribute(d, param);
  const Hierarchy& h = d.current();
  const std::string& level = ctx.display_level(dim);
  int level_index = h.IndexOf(level);
  int index = h.IndexOf(param);
  AnalysisContext out = ctx;
  if (index >= 0) {
    if (index <= level_index) {
      Fail(ErrorCode::kNotCoarser, "'" + std::string(param) + "' is not coarser than '" + level +
                                       "' in '" + h.name + "'");
    }
  } else {
    if (level == kAllParam) {
      Fail(ErrorCode::kNotCoarser, "nothing is coarser than all");
    }
    const DimensionTable& table = ctx.store->dimension(dim);
    RequireDependency(table, level, param);
    RequireDependency(table, param, h.params[static_cast<size_t>(level_index + 1)]);
    auto& params = out.schema.FindDimension(dim)->hierarchies.front().params;
    params.insert(params.begin() + level_index + 1, std::string(param));
  }
  out.display_levels[std::string(dim)] = std::string(param);
  return out;
}

AnalysisContext Push(const AnalysisContext& ctx, std::string_view dim, std::string_view param,
                     std::string_view fact) {
  const Fact& f = RequireFact(ctx.schema, fact);
  const Dimension& d = RequireDimension(ctx.schema, dim);
  RequireLinked(ctx.schema, fact, dim);
  RequireAttribute(d, param);
  if (param == d.key) {
    Fail(ErrorCode::kCannotPushKey, "cannot push the key '" + d.key + "' of '" + d.name + "'");
  }
  if (param == kAllParam) Fail(ErrorCode::kCannotPushAll, "cannot push all");
  if (ctx.restrictions.References(dim, param)) {
    Fail(ErrorCode::kParameterInUse, "'" + std::string(dim) + "." + std::string(param) +
                                         "' is referenced by a restriction");
  }
  if (f.FindMeasure(param) != nullptr) {
    Fail(ErrorCode::kNameConflict, "fact '" + f.name + "' already has a measure '" +
                                       std::string(param) + "'");
  }
  for (const auto& other : ctx.schema.Linked(fact)) {
    if (other == dim) continue;
    if (RequireDimension(ctx.schema, other).HasAttribute(param)) {
      Fail(ErrorCode::kNameConflict, "linked dimension '" + other + "' also has a parameter '" +
                                         std::string(param) + "'");
    }
  }

  const DimensionTable& dtable = ctx.store->dimension(dim);
  const FactTable& ftable = ctx.store->fact(fact);
  const AttributeColumn& column = *dtable.Column(param);
  const std::vector<uint32_t>& refs = *ftable.Refs(dim);

  MeasureDef measure{std::string(param),
                     column.numeric() ? MeasureKind::kNumeric : MeasureKind::kText, {}};
  measure.agg = DefaultAgg(measure.kind);

  MeasureColumn values;
  values.kind = measure.kind;
  for (uint32_t member : refs) {
    uint32_t code = column.codes()[member];
    if (measure.kind == MeasureKind::kNumeric) {
      values.numbers.push_back(column.number(code));
    } else {
      values.texts.push_back(column.dictionary()[code]);
    }
  }
  auto table = std::make_shared<FactTable>(ftable);
  table->measures[std::string(param)] = std::move(values);

  AnalysisContext out = ctx;
  out.store = std::make_shared<const InstanceStore>(ctx.store->WithFact(std::move(table)));
  out.schema.FindFact(fact)->measures.push_back(std::move(measure));
  Dimension& target = *out.schema.FindDimension(dim);
  std::erase(target.attributes, std::string(param));
  for (auto& h : target.hierarchies) std::erase(h.params, std::string(param));
  out.orderings.erase({std::string(dim), std::string(param)});
  RepairDisplayLevels(out);
  return out;
}

AnalysisContext Pull(const AnalysisContext& ctx, std::string_view fact, std::string_view measure,
                     std::string_view dim) {
  const Fact& f = RequireFact(ctx.schema, fact);
  if (f.FindMeasure(measure) == nullptr) {
    Fail(ErrorCode::kUnknownMeasure, "fact '" + f.name + "' has no measure '" +
                                         std::string(measure) + "'");
  }
  const Dimension& d = RequireDimension(ctx.schema, dim);
  RequireLinked(ctx.schema, fact, dim);
  if (d.HasAttribute(measure) || measure == kAllParam) {
    Fail(ErrorCode::kNameConflict, "dimension '" + d.name + "' already has a parameter '" +
                                       std::string(measure) + "'");
  }
  for (const auto& other : ctx.schema.FactsLinkedTo(dim)) {
    if (other != fact && RequireFact(ctx.schema, other).FindMeasure(measure) != nullptr) {
      Fail(ErrorCode::kNameConflict, "fact '" + other + "' linked to '" + d.name +
                                         "' has a measure '" + std::string(measure) + "'");
    }
  }

  const DimensionTable& dtable = ctx.store->dimension(dim);
  const FactTable& ftable = ctx.store->fact(fact);
  const MeasureColumn& mcol = *ftable.Measure(measure);
  const std::vector<uint32_t>& refs = *ftable.Refs(dim);

  // Distinct measure values per member, in order of first appearance.
  std::vector<std::vector<std::string>> refined(dtable.member_count);
  std::vector<std::unordered_map<std::string, uint32_t>> slot(dtable.member_count);
  std::vector<uint32_t> row_slot(ftable.row_count);
  for (size_t r = 0; r < ftable.row_count; ++r) {
    uint32_t member = refs[r];
    std::string value = mcol.Text(r);
    auto [it, inserted] =
        slot[member].emplace(value, static_cast<uint32_t>(refined[member].size()));
    if (inserted) refined[member].push_back(value);
    row_slot[r] = it->second;
  }
  std::vector<char> needs_empty(dtable.member_count, 0);
  for (const auto& [name, other] : ctx.store->facts()) {
    if (name == fact) continue;
    if (const auto* other_refs = other->Refs(dim)) {
      for (uint32_t member : *other_refs) needs_empty[member] = 1;
    }
  }

  auto table = std::make_shared<DimensionTable>();
  table->name = dtable.name;
  table->key = dtable.key;
  table->attribute_order = dtable.attribute_order;
  table->attribute_order.emplace_back(measure);
  std::vector<uint32_t> first_refinement(dtable.member_count);
  std::vector<uint32_t> empty_refinement(dtable.member_count);
  std::vector<std::pair<uint32_t, std::string>> members;
  for (uint32_t m = 0; m < dtable.member_count; ++m) {
    first_refinement[m] = static_cast<uint32_t>(members.size());
    for (const auto& value : refined[m]) members.emplace_back(m, value);
    if (refined[m].empty() || needs_empty[m]) {
      empty_refinement[m] = static_cast<uint32_t>(members.size());
      members.emplace_back(m, std::string(kEmptySentinel));
    }
  }
  for (const auto& attribute : dtable.attribute_order) {
    const AttributeColumn& source = *dtable.Column(attribute);
    AttributeColumn& target = table->columns[attribute];
    for (const auto& [m, value] : members) target.Append(source.value(m));
  }
  AttributeColumn& pulled = table->columns[std::string(measure)];
  for (const auto& member : members) pulled.Append(member.second);
  table->member_count = members.size();

  InstanceStore store = ctx.store->WithDimension(table);
  for (const auto& [name, other] : ctx.store->facts()) {
    const auto* other_refs = other->Refs(dim);
    if (other_refs == nullptr) continue;
    auto remapped = std::make_shared<FactTable>(*other);
    auto& new_refs = remapped->refs[std::string(dim)];
    for (size_t r = 0; r < new_refs.size(); ++r) {
      uint32_t member = (*other_refs)[r];
      new_refs[r] = name == fact ? first_refinement[member] + row_slot[r] : empty_refinement[member];
    }
    store = store.WithFact(std::move(remapped));
  }

  AnalysisContext out = ctx;
  out.store = std::make_shared<const InstanceStore>(std::move(store));
  std::erase_if(out.schema.FindFact(fact)->measures,
                [&](const MeasureDef& m) { return m.name == measure; });
  out.schema.FindDimension(dim)->attributes.emplace_back(measure);
  return out;
}

std::vector<AnalysisContext> TSplit(const AnalysisContext& ctx) {
  std::vector<AnalysisContext> out;
  for (const auto& fact : ctx.schema.facts) {
    const auto& linked = ctx.schema.Linked(fact.name);
    AnalysisContext sub;
    sub.store = ctx.store;
    sub.schema.name = ctx.schema.name;
    sub.schema.facts = {fact};
    sub.schema.param[fact.name] = linked;
    for (const auto& dim : ctx.schema.dims) {
      if (std::find(linked.begin(), linked.end(), dim.name) == linked.end()) continue;
      sub.schema.dims.push_back(dim);
      sub.display_levels[dim.name] = ctx.display_level(dim.name);
    }
    for (const auto& pred : ctx.restrictions.predicates()) {
      if (sub.schema.FindDimension(pred.dim) != nullptr) sub.restrictions.Add(pred);
    }
    for (const auto& [key, order] : ctx.orderings) {
      if (sub.schema.FindDimension(key.first) != nullptr) sub.orderings[key] = order;
    }
    out.push_back(std::move(sub));
  }
  return out;
}

std::vector<AnalysisContext> Split(const AnalysisContext& ctx, std::string_view dim,
                                   std::string_view param) {
  if (ctx.schema.facts.size() != 1) {
    Fail(ErrorCode::kNotStarSchema, "split needs a single-fact schema, found " +
                                        std::to_string(ctx.schema.facts.size()) + " facts");
  }
  const Dimension& d = RequireDimension(ctx.schema, dim);
  RequireLinked(ctx.schema, ctx.current_fact(), dim);
  RequireAttribute(d, param);
  const DimensionTable& table = ctx.store->dimension(dim);
  std::vector<AnalysisContext> out;
  for (const auto& value : ctx.Ordering(dim, param)) {
    Predicate pred{std::string(dim), std::string(param), Comparator::kEq,
                   {ValueLiteral(table, param, value)}};
    out.push_back(Slice(ctx, dim, std::move(pred)));
  }
  return out;
}

AnalysisContext Slice(const AnalysisContext& ctx, std::string_view dim, Predicate pred) {
  const Dimension& d = RequireDimension(ctx.schema, dim);
  pred.dim = std::string(dim);
  RequireAttribute(d, pred.param);
  CheckPredicate(ctx.store->dimension(dim), pred);
  AnalysisContext out = ctx;
  out.restrictions.Add(std::move(pred));
  return out;
}

std::string_view SetOpName(SetOp op) {
  switch (op) {
    case SetOp::kUnion: return "union";
    case SetOp::kIntersect: return "intersect";
    case SetOp::kDifference: return "difference";
  }
  return "union";
}

AnalysisContext Combine(SetOp op, const AnalysisContext& a, const AnalysisContext& b) {
  const Fact& fa = a.schema.facts.front();
  const Fact& fb = b.schema.facts.front();
  const auto& linked = a.schema.Linked(fa.name);
  if (fa != fb || linked != b.schema.Linked(fb.name)) {
    Fail(ErrorCode::kSchemaMismatch, "current facts '" + fa.name + "' and '" + fb.name +
                                         "' differ in measures or dimensions");
  }
  for (const auto& dim : linked) {
    if (a.store->dimension_ptr(dim) != b.store->dimension_ptr(dim)) {
      Fail(ErrorCode::kSchemaMismatch, "dimension '" + dim + "' has different members");
    }
  }

  const FactTable& ta = a.store->fact(fa.name);
  const FactTable& tb = b.store->fact(fb.name);
  using Key = std::vector<uint32_t>;
  auto key_of = [&](const FactTable& t, uint32_t row) {
    Key key;
    key.reserve(linked.size());
    for (const auto& dim : linked) key.push_back((*t.Refs(dim))[row]);
    return key;
  };
  auto tuple_of = [&](const FactTable& t, uint32_t row) {
    std::vector<std::string> tuple;
    for (const auto& m : fa.measures) tuple.push_back(t.Measure(m.name)->Text(row));
    return tuple;
  };
  std::map<Key, std::vector<uint32_t>> rows_a;
  std::map<Key, std::vector<uint32_t>> rows_b;
  std::vector<uint32_t> order_a = RestrictedRows(a);
  std::vector<uint32_t> order_b = RestrictedRows(b);
  for (uint32_t r : order_a) rows_a[key_of(ta, r)].push_back(r);
  for (uint32_t r : order_b) rows_b[key_of(tb, r)].push_back(r);

  std::vector<std::pair<const FactTable*, uint32_t>> result;
  switch (op) {
    case SetOp::kUnion: {
      for (const auto& [key, rs] : rows_a) {
        auto it = rows_b.find(key);
        if (it == rows_b.end()) continue;
        std::vector<std::vector<std::string>> left, right;
        for (uint32_t r : rs) left.push_back(tuple_of(ta, r));
        for (uint32_t r : it->second) right.push_back(tuple_of(tb, r));
        std::sort(left.begin(), left.end());
        std::sort(right.begin(), right.end());
        if (left != right) {
          Fail(ErrorCode::kMeasureConflict,
               "union finds rows with the same dimension references but different measures");
        }
      }
      for (uint32_t r : order_a) result.emplace_back(&ta, r);
      for (uint32_t r : order_b) {
        if (!rows_a.contains(key_of(tb, r))) result.emplace_back(&tb, r);
      }
      break;
    }
    case SetOp::kIntersect:
      for (uint32_t r : order_a) {
        if (rows_b.contains(key_of(ta, r))) result.emplace_back(&ta, r);
      }
      break;
    case SetOp::kDifference:
      for (uint32_t r : order_a) {
        if (!rows_b.contains(key_of(ta, r))) result.emplace_back(&ta, r);
      }
      break;
  }

  auto table = std::make_shared<FactTable>();
  table->name = fa.name;
  table->dims = linked;
  table->row_count = result.size();
  for (const auto& dim : linked) {
    auto& refs = table->refs[dim];
    for (const auto& [t, r] : result) refs.push_back((*t->Refs(dim))[r]);
  }
  for (const auto& m : fa.measures) {
    MeasureColumn& column = table->measures[m.name];
    column.kind = ta.Measure(m.name)->kind;
    for (const auto& [t, r] : result) {
      const MeasureColumn& source = *t->Measure(m.name);
      if (column.kind == MeasureKind::kNumeric) {
        column.numbers.push_back(source.numbers[r]);
      } else {
        column.texts.push_back(source.texts[r]);
      }
    }
  }

  AnalysisContext out = a;
  out.store = std::make_shared<const InstanceStore>(a.store->WithFact(std::move(table)));
  RestrictionSet restrictions;
  switch (op) {
    case SetOp::kUnion:
      for (const auto& pred : a.restrictions.predicates()) {
        if (b.restrictions.Contains(pred)) restrictions.Add(pred);
      }
      break;
    case SetOp::kIntersect:
      restrictions = a.restrictions;
      for (const auto& pred : b.restrictions.predicates()) restrictions.Add(pred);
      break;
    case SetOp::kDifference:
      restrictions = a.restrictions;
      break;
  }
  out.restrictions = std::move(restrictions);
  return out;
}

AnalysisContext Display(const AnalysisContext& ctx, std::string_view fact,
                        const std::vector<std::string>& dims) {
  RequireFact(ctx.schema, fact);
  if (dims.size() > 2) {
    Fail(ErrorCode::kUnsupported, "an n-table displays at most two dimensions");
  }
  if (dims.size() == 2 && dims[0] == dims[1]) {
    Fail(ErrorCode::kSameDimension, "cannot display dimension '" + dims[0] + "' twice");
  }
  AnalysisContext out = ctx;
  if (out.current_fact() != fact) out = FRotate(out, out.current_fact(), fact);
  for (size_t i = 0; i < dims.size(); ++i) {
    RequireLinked(out.schema, fact, dims[i]);
    const std::string at = out.schema.Linked(fact)[i];
    if (at != dims[i]) out = DRotate(out, fact, at, dims[i]);
  }
  return out;
}

RestrictionSet ApplicableRestrictions(const AnalysisContext& ctx, std::string_view fact) {
  RestrictionSet out;
  for (const auto& pred : ctx.restrictions.predicates()) {
    if (ctx.schema.IsLinked(fact, pred.dim)) out.Add(pred);
  }
  return out;
}

std::vector<uint32_t> RestrictedRows(const AnalysisContext& ctx) {
  const std::string& fact = ctx.current_fact();
  return FactRows(*ctx.store, fact, ApplicableRestrictions(ctx, fact));
}

}  // namespace algebra
}  // namespace constellation
