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

#include "support/oracle.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>

#include "constellation/instance_store.h"

namespace oracle {

using namespace constellation;

namespace {

const std::string kAll = "all";
const std::string kAllText = "All";
const std::string kEmpty = "\xE2\x88\x85";

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void Reject(const std::string& why) { throw Rejected(why); }

std::optional<double> Number(const std::string& text) {
  if (text.empty() || std::isspace(static_cast<unsigned char>(text[0])) ||
      text.find_first_of("xXpP") != std::string::npos) {
    return std::nullopt;
  }
  const char* begin = text.c_str();
  if (*begin == '+') ++begin;
  char* end = nullptr;
  double value = std::strtod(begin, &end);
  if (end == begin || end != text.c_str() + text.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::string Text(double value) {
  if (value == std::floor(value) && std::fabs(value) < 1e15) {
    return std::to_string(static_cast<long long>(value));
  }
  char buf[64];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    if (std::strtod(buf, nullptr) == value) break;
  }
  return buf;
}

std::string Text(const Literal& lit) {
  if (const double* d = std::get_if<double>(&lit)) return Text(*d);
  return std::get<std::string>(lit);
}

std::optional<double> Number(const Literal& lit) {
  if (const double* d = std::get_if<double>(&lit)) return *d;
  return Number(std::get<std::string>(lit));
}

const Dimension& Dim(const World& w, const std::string& name) {
  for (const auto& d : w.schema.dims) {
    if (d.name == name) return d;
  }
  Reject("unknown dimension " + name);
}

Dimension& MutableDim(World& w, const std::string& name) {
  for (auto& d : w.schema.dims) {
    if (d.name == name) return d;
  }
  Reject("unknown dimension " + name);
}

Fact* FindFact(World& w, const std::string& name) {
  for (auto& f : w.schema.facts) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

bool HasAttribute(const Dimension& d, const std::string& p) {
  return std::find(d.attributes.begin(), d.attributes.end(), p) != d.attributes.end();
}

bool Linked(const World& w, const std::string& fact, const std::string& dim) {
  auto it = w.schema.param.find(fact);
  return it != w.schema.param.end() &&
         std::find(it->second.begin(), it->second.end(), dim) != it->second.end();
}

const std::string& Value(const World& w, const std::string& dim, size_t member, const std::string& p) {
  if (p == kAll) return kAllText;
  return w.members.at(dim)[member].values.at(p);
}

bool Numeric(const World& w, const std::string& dim, const std::string& p) {
  if (p == kAll) return false;
  const auto& members = w.members.at(dim);
  return std::all_of(members.begin(), members.end(),
                     [&](const Member& m) { return Number(m.values.at(p)).has_value(); });
}

std::vector<std::string> DefaultOrdering(const World& w, const std::string& dim, const std::string& p) {
  if (p == kAll) return {kAllText};
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (size_t m = 0; m < w.members.at(dim).size(); ++m) {
    const std::string& v = Value(w, dim, m, p);
    if (seen.insert(v).second) out.push_back(v);
  }
  return out;
}

std::vector<std::string> Ordering(const World& w, const std::string& dim, const std::string& p) {
  auto it = w.orderings.find({dim, p});
  return it != w.orderings.end() ? it->second : DefaultOrdering(w, dim, p);
}

bool Equals(const World& w, const std::string& dim, size_t member, const std::string& p,
            const Literal& lit) {
  const std::string& v = Value(w, dim, member, p);
  if (Numeric(w, dim, p)) {
    if (auto rhs = Number(lit)) return *Number(v) == *rhs;
  }
  return v == Text(lit);
}

bool Holds(const World& w, size_t member, const Predicate& pred) {
  switch (pred.op) {
    case Comparator::kEq: return Equals(w, pred.dim, member, pred.param, pred.literals[0]);
    case Comparator::kNe: return !Equals(w, pred.dim, member, pred.param, pred.literals[0]);
    case Comparator::kIn:
      for (const auto& lit : pred.literals) {
        if (Equals(w, pred.dim, member, pred.param, lit)) return true;
      }
      return false;
    default: break;
  }
  double lhs = *Number(Value(w, pred.dim, member, pred.param));
  double rhs = *Number(pred.literals[0]);
  switch (pred.op) {
    case Comparator::kLt: return lhs < rhs;
    case Comparator::kLe: return lhs <= rhs;
    case Comparator::kGt: return lhs > rhs;
    default: return lhs >= rhs;
  }
}

void AddRestriction(std::vector<Predicate>& list, Predicate pred) {
  if (std::find(list.begin(), list.end(), pred) != list.end()) return;
  if (pred.op == Comparator::kEq) {
    for (auto& p : list) {
      if (p.op == Comparator::kEq && p.dim == pred.dim && p.param == pred.param) {
        if (Text(p.literals[0]) != Text(pred.literals[0])) {
          p.op = Comparator::kIn;
          p.literals.clear();
        }
        return;
      }
    }
  }
  list.push_back(std::move(pred));
}

std::vector<Predicate> Applicable(const World& w, const std::string& fact) {
  std::vector<Predicate> out;
  for (const auto& p : w.restrictions) {
    if (Linked(w, fact, p.dim)) out.push_back(p);
  }
  return out;
}

bool RowPasses(const World& w, const Row& row, const std::vector<Predicate>& preds) {
  for (const auto& p : preds) {
    if (!Holds(w, row.refs.at(p.dim), p)) return false;
  }
  return true;
}

std::string DefaultLevel(const Dimension& d) {
  const auto& params = d.hierarchies.front().params;
  return params[params.size() - 2];
}

bool InCurrent(const Dimension& d, const std::string& p) {
  const auto& params = d.hierarchies.front().params;
  return std::find(params.begin(), params.end(), p) != params.end();
}

int IndexIn(const Dimension& d, const std::string& p) {
  const auto& params = d.hierarchies.front().params;
  auto it = std::find(params.begin(), params.end(), p);
  return it == params.end() ? -1 : static_cast<int>(it - params.begin());
}

void Repair(World& w) {
  for (const auto& d : w.schema.dims) {
    auto it = w.levels.find(d.name);
    if (it == w.levels.end() || !InCurrent(d, it->second)) w.levels[d.name] = DefaultLevel(d);
  }
}

void RequireFd(const World& w, const std::string& dim, const std::string& x, const std::string& y) {
  std::map<std::string, std::string> seen;
  for (size_t m = 0; m < w.members.at(dim).size(); ++m) {
    auto [it, fresh] = seen.emplace(Value(w, dim, m, x), Value(w, dim, m, y));
    if (!fresh && it->second != Value(w, dim, m, y)) Reject("functional dependency");
  }
}

void CheckSlice(const World& w, const Predicate& pred) {
  const Dimension& d = Dim(w, pred.dim);
  if (!HasAttribute(d, pred.param)) Reject("unknown parameter");
  if (pred.op != Comparator::kIn && pred.literals.size() != 1) Reject("arity");
  if (IsOrdered(pred.op)) {
    if (!Numeric(w, pred.dim, pred.param) || !Number(pred.literals[0])) Reject("type");
  }
}

World DRotate(World w, const std::string& fact, const std::string& a, const std::string& b) {
  if (FindFact(w, fact) == nullptr) Reject("unknown fact");
  if (!Linked(w, fact, a) || !Linked(w, fact, b)) Reject("not linked");
  if (a == b) Reject("same dimension");
  auto& list = w.schema.param[fact];
  std::iter_swap(std::find(list.begin(), list.end(), a), std::find(list.begin(), list.end(), b));
  return w;
}

World FRotate(World w, const std::string& a, const std::string& b) {
  if (FindFact(w, a) == nullptr || FindFact(w, b) == nullptr) Reject("unknown fact");
  if (a == b) Reject("same fact");
  std::iter_swap(FindFact(w, a), FindFact(w, b));
  Repair(w);
  return w;
}

World Slice(World w, const std::string& dim, Predicate pred) {
  pred.dim = dim;
  CheckSlice(w, pred);
  AddRestriction(w.restrictions, std::move(pred));
  return w;
}

std::vector<std::string> Key(const Row& row, const std::vector<std::string>& linked) {
  std::vector<std::string> key;
  for (const auto& d : linked) key.push_back(std::to_string(row.refs.at(d)));
  return key;
}

World Combine(algebra::SetOp op, const World& a, const World& b) {
  const Fact& fa = a.schema.facts.front();
  const Fact& fb = b.schema.facts.front();
  const auto& linked = a.schema.param.at(fa.name);
  if (!(fa == fb) || linked != b.schema.param.at(fb.name)) Reject("schema mismatch");
  for (const auto& d : linked) {
    const auto& ma = a.members.at(d);
    const auto& mb = b.members.at(d);
    bool same = ma.size() == mb.size();
    for (size_t i = 0; same && i < ma.size(); ++i) same = ma[i].values == mb[i].values;
    if (!same) Reject("different members");
  }
  auto restricted = [&](const World& w) {
    std::vector<const Row*> out;
    auto preds = Applicable(w, fa.name);
    for (const auto& row : w.rows.at(fa.name)) {
      if (RowPasses(w, row, preds)) out.push_back(&row);
    }
    return out;
  };
  auto tuple = [&](const Row& row) {
    std::vector<std::string> t;
    for (const auto& m : fa.measures) t.push_back(Text(row.measures.at(m.name)));
    return t;
  };
  auto ra = restricted(a);
  auto rb = restricted(b);
  std::map<std::vector<std::string>, std::vector<std::vector<std::string>>> ka, kb;
  for (const Row* r : ra) ka[Key(*r, linked)].push_back(tuple(*r));
  for (const Row* r : rb) kb[Key(*r, linked)].push_back(tuple(*r));

  std::vector<Row> result;
  switch (op) {
    case algebra::SetOp::kUnion:
      for (auto& [key, tuples] : ka) {
        auto it = kb.find(key);
        if (it == kb.end()) continue;
        auto left = tuples;
        auto right = it->second;
        std::sort(left.begin(), left.end());
        std::sort(right.begin(), right.end());
        if (left != right) Reject("measure conflict");
      }
      for (const Row* r : ra) result.push_back(*r);
      for (const Row* r : rb) {
        if (!ka.contains(Key(*r, linked))) result.push_back(*r);
      }
      break;
    case algebra::SetOp::kIntersect:
      for (const Row* r : ra) {
        if (kb.contains(Key(*r, linked))) result.push_back(*r);
      }
      break;
    case algebra::SetOp::kDifference:
      for (const Row* r : ra) {
        if (!kb.contains(Key(*r, linked))) result.push_back(*r);
      }
      break;
  }
  World out = a;
  out.rows[fa.name] = std::move(result);
  std::vector<Predicate> preds;
  switch (op) {
    case algebra::SetOp::kUnion:
      for (const auto& p : a.restrictions) {
        if (std::find(b.restrictions.begin(), b.restrictions.end(), p) != b.restrictions.end()) {
          AddRestriction(preds, p);
        }
      }
      break;
    case algebra::SetOp::kIntersect:
      preds = a.restrictions;
      for (const auto& p : b.restrictions) AddRestriction(preds, p);
      break;
    case algebra::SetOp::kDifference:
      preds = a.restrictions;
      break;
  }
  out.restrictions = std::move(preds);
  return out;
}

World Push(World w, const std::string& dim, const std::string& p, const std::string& fact) {
  Fact* f = FindFact(w, fact);
  if (f == nullptr) Reject("unknown fact");
  const Dimension& d = Dim(w, dim);
  if (!Linked(w, fact, dim)) Reject("not linked");
  if (!HasAttribute(d, p)) Reject("unknown parameter");
  if (p == d.key || p == kAll) Reject("cannot push");
  for (const auto& pred : w.restrictions) {
    if (pred.dim == dim && pred.param == p) Reject("in use");
  }
  for (const auto& m : f->measures) {
    if (m.name == p) Reject("name conflict");
  }
  for (const auto& other : w.schema.param.at(fact)) {
    if (other != dim && HasAttribute(Dim(w, other), p)) Reject("name conflict");
  }
  const bool numeric = Numeric(w, dim, p);
  for (auto& row : w.rows.at(fact)) {
    const std::string& v = Value(w, dim, row.refs.at(dim), p);
    row.measures[p] = numeric ? Literal(*Number(v)) : Literal(v);
  }
  MeasureDef def;
  def.name = p;
  def.kind = numeric ? MeasureKind::kNumeric : MeasureKind::kText;
  def.agg = numeric ? AggFunc::kSum : AggFunc::kDistinctSet;
  f->measures.push_back(def);
  Dimension& md = MutableDim(w, dim);
  std::erase(md.attributes, p);
  for (auto& h : md.hierarchies) std::erase(h.params, p);
  w.orderings.erase({dim, p});
  Repair(w);
  return w;
}

World Pull(World w, const std::string& fact, const std::string& m, const std::string& dim) {
  Fact* f = FindFact(w, fact);
  if (f == nullptr) Reject("unknown fact");
  if (std::none_of(f->measures.begin(), f->measures.end(), [&](const MeasureDef& x) { return x.name == m; })) {
    Reject("unknown measure");
  }
  const Dimension& d = Dim(w, dim);
  if (!Linked(w, fact, dim)) Reject("not linked");
  if (HasAttribute(d, m) || m == kAll) Reject("name conflict");
  for (const auto& other : w.schema.facts) {
    if (other.name == fact || !Linked(w, other.name, dim)) continue;
    for (const auto& x : other.measures) {
      if (x.name == m) Reject("name conflict");
    }
  }
  const auto& old = w.members.at(dim);
  std::vector<std::vector<std::string>> refinements(old.size());
  for (const auto& row : w.rows.at(fact)) {
    auto& list = refinements[row.refs.at(dim)];
    std::string v = Text(row.measures.at(m));
    if (std::find(list.begin(), list.end(), v) == list.end()) list.push_back(v);
  }
  std::vector<char> referenced_elsewhere(old.size(), 0);
  for (const auto& [name, rows] : w.rows) {
    if (name == fact) continue;
    for (const auto& row : rows) {
      auto it = row.refs.find(dim);
      if (it != row.refs.end()) referenced_elsewhere[it->second] = 1;
    }
  }
  std::vector<Member> members;
  std::map<std::pair<size_t, std::string>, size_t> index;
  for (size_t i = 0; i < old.size(); ++i) {
    auto values = refinements[i];
    if (values.empty() || referenced_elsewhere[i]) values.push_back(kEmpty);
    for (const auto& v : values) {
      Member member = old[i];
      member.values[m] = v;
      index[{i, v}] = members.size();
      members.push_back(std::move(member));
    }
  }
  for (auto& [name, rows] : w.rows) {
    for (auto& row : rows) {
      auto it = row.refs.find(dim);
      if (it == row.refs.end()) continue;
      std::string v = name == fact ? Text(row.measures.at(m)) : kEmpty;
      it->second = index.at({it->second, v});
    }
  }
  w.members[dim] = std::move(members);
  std::erase_if(f->measures, [&](const MeasureDef& x) { return x.name == m; });
  MutableDim(w, dim).attributes.push_back(m);
  return w;
}

std::vector<World> TSplit(const World& w) {
  std::vector<World> out;
  for (const auto& fact : w.schema.facts) {
    const auto& linked = w.schema.param.at(fact.name);
    World sub;
    sub.schema.name = w.schema.name;
    sub.schema.facts = {fact};
    sub.schema.param[fact.name] = linked;
    for (const auto& d : w.schema.dims) {
      if (std::find(linked.begin(), linked.end(), d.name) == linked.end()) continue;
      sub.schema.dims.push_back(d);
      sub.levels[d.name] = w.levels.at(d.name);
    }
    auto in_sub = [&](const std::string& dim) {
      return std::find(linked.begin(), linked.end(), dim) != linked.end();
    };
    for (const auto& p : w.restrictions) {
      if (in_sub(p.dim)) AddRestriction(sub.restrictions, p);
    }
    for (const auto& [key, order] : w.orderings) {
      if (in_sub(key.first)) sub.orderings[key] = order;
    }
    sub.members = w.members;
    sub.rows = w.rows;
    out.push_back(std::move(sub));
  }
  return out;
}

std::vector<World> Split(const World& w, const std::string& dim, const std::string& p) {
  if (w.schema.facts.size() != 1) Reject("not a star");
  const Dimension& d = Dim(w, dim);
  if (!Linked(w, w.schema.facts.front().name, dim)) Reject("not linked");
  if (!HasAttribute(d, p)) Reject("unknown parameter");
  std::vector<World> out;
  const bool numeric = Numeric(w, dim, p);
  for (const auto& v : Ordering(w, dim, p)) {
    Predicate pred{dim, p, Comparator::kEq, {numeric ? Literal(*Number(v)) : Literal(v)}};
    out.push_back(Slice(w, dim, pred));
  }
  return out;
}

}  // namespace

World FromStore(const InstanceStore& store) {
  World w;
  w.schema = store.schema();
  for (const auto& [name, table] : store.dimensions()) {
    auto& members = w.members[name];
    for (size_t m = 0; m < table->member_count; ++m) {
      Member member;
      for (const auto& a : table->attribute_order) {
        member.values[a] = std::string(table->Column(a)->value(m));
      }
      members.push_back(std::move(member));
    }
  }
  for (const auto& [name, table] : store.facts()) {
    auto& rows = w.rows[name];
    for (size_t r = 0; r < table->row_count; ++r) {
      Row row;
      for (const auto& [dim, refs] : table->refs) row.refs[dim] = refs[r];
      for (const auto& [measure, column] : table->measures) {
        if (column.kind == MeasureKind::kNumeric) {
          row.measures[measure] = column.numbers[r];
        } else {
          row.measures[measure] = column.texts[r];
        }
      }
      rows.push_back(std::move(row));
    }
  }
  for (const auto& d : w.schema.dims) w.levels[d.name] = DefaultLevel(d);
  return w;
}

State Apply(const State& state, const mdql::Command& cmd) {
  const World& w = state.world;
  State out = state;
  std::visit(
      Overloaded{
          [&](const mdql::DisplayCmd& c) {
            if (FindFact(out.world, c.fact) == nullptr) Reject("unknown fact");
            if (c.dims.size() > 2) Reject("too many dims");
            if (c.dims.size() == 2 && c.dims[0] == c.dims[1]) Reject("same dimension");
            World next = w;
            if (next.schema.facts.front().name != c.fact) {
              next = FRotate(next, next.schema.facts.front().name, c.fact);
            }
            for (size_t i = 0; i < c.dims.size(); ++i) {
              if (!Linked(next, c.fact, c.dims[i])) Reject("not linked");
              std::string at = next.schema.param.at(c.fact)[i];
              if (at != c.dims[i]) next = DRotate(next, c.fact, at, c.dims[i]);
            }
            out.world = std::move(next);
          },
          [&](const mdql::DRotateCmd& c) { out.world = DRotate(w, c.fact, c.dim_a, c.dim_b); },
          [&](const mdql::HRotateCmd& c) {
            World next = w;
            Dimension& d = MutableDim(next, c.dim);
            auto it = std::find_if(d.hierarchies.begin(), d.hierarchies.end(),
                                   [&](const Hierarchy& h) { return h.name == c.hier; });
            if (it == d.hierarchies.end()) Reject("unknown hierarchy");
            if (it == d.hierarchies.begin()) Reject("same hierarchy");
            std::iter_swap(d.hierarchies.begin(), it);
            Repair(next);
            out.world = std::move(next);
          },
          [&](const mdql::FRotateCmd& c) { out.world = FRotate(w, c.fact_a, c.fact_b); },
          [&](const mdql::SwitchCmd& c) {
            const Dimension& d = Dim(w, c.dim);
            if (!HasAttribute(d, c.param)) Reject("unknown parameter");
            if (!InCurrent(d, c.param)) Reject("not in current hierarchy");
            auto order = Ordering(w, c.dim, c.param);
            auto a = std::find(order.begin(), order.end(), Text(c.value_a));
            auto b = std::find(order.begin(), order.end(), Text(c.value_b));
            if (a == order.end() || b == order.end()) Reject("unknown value");
            std::iter_swap(a, b);
            World next = w;
            if (order == DefaultOrdering(w, c.dim, c.param)) {
              next.orderings.erase({c.dim, c.param});
            } else {
              next.orderings[{c.dim, c.param}] = order;
            }
            out.world = std::move(next);
          },
          [&](const mdql::DrillDownCmd& c) {
            const Dimension& d = Dim(w, c.dim);
            if (!HasAttribute(d, c.param)) Reject("unknown parameter");
            const std::string level = w.levels.at(c.dim);
            int li = IndexIn(d, level);
            int pi = IndexIn(d, c.param);
            World next = w;
            if (pi >= 0) {
              if (pi >= li) Reject("not finer");
            } else {
              if (li == 0) Reject("not finer");
              RequireFd(w, c.dim, d.hierarchies.front().params[li - 1], c.param);
              RequireFd(w, c.dim, c.param, level);
              auto& params = MutableDim(next, c.dim).hierarchies.front().params;
              params.insert(params.begin() + li, c.param);
            }
            next.levels[c.dim] = c.param;
            out.world = std::move(next);
          },
          [&](const mdql::RollUpCmd& c) {
            const Dimension& d = Dim(w, c.dim);
            if (!HasAttribute(d, c.param)) Reject("unknown parameter");
            const std::string level = w.levels.at(c.dim);
            int li = IndexIn(d, level);
            int pi = IndexIn(d, c.param);
            World next = w;
            if (pi >= 0) {
              if (pi <= li) Reject("not coarser");
            } else {
              if (level == kAll) Reject("not coarser");
              RequireFd(w, c.dim, level, c.param);
              RequireFd(w, c.dim, c.param, d.hierarchies.front().params[li + 1]);
              auto& params = MutableDim(next, c.dim).hierarchies.front().params;
              params.insert(params.begin() + li + 1, c.param);
            }
            next.levels[c.dim] = c.param;
            out.world = std::move(next);
          },
          [&](const mdql::PushCmd& c) { out.world = Push(w, c.dim, c.param, c.fact); },
          [&](const mdql::PullCmd& c) { out.world = Pull(w, c.fact, c.measure, c.dim); },
          [&](const mdql::TSplitCmd&) {
            out.splits = TSplit(w);
            out.world = out.splits.front();
          },
          [&](const mdql::SplitCmd& c) {
            out.splits = Split(w, c.dim, c.param);
            if (!out.splits.empty()) out.world = out.splits.front();
          },
          [&](const mdql::SliceCmd& c) {
            World next = w;
            for (const auto& p : c.preds) next = Slice(std::move(next), c.dim, p);
            out.world = std::move(next);
          },
          [&](const mdql::CombineCmd& c) {
            auto resolve = [&](const mdql::ContextRef& ref) -> const World& {
              if (ref.index == 0) return w;
              if (ref.index > state.splits.size()) Reject("unknown context");
              return state.splits[ref.index - 1];
            };
            out.world = Combine(c.op, resolve(c.left), resolve(c.right));
          },
          [&](const mdql::ShowCmd&) {},
          [&](const mdql::ExportCmd&) {},
          [&](const mdql::UndoCmd&) { Reject("undo is not modelled"); },
      },
      cmd);
  return out;
}

NTable Build(const World& w) {
  const Fact& fact = w.schema.facts.front();
  if (fact.measures.empty()) Reject("no measures");
  const auto& linked = w.schema.param.at(fact.name);
  if (linked.size() < 2) Reject("fewer than two dimensions");
  const std::string& cdim = linked[0];
  const std::string& rdim = linked[1];
  const auto preds = Applicable(w, fact.name);

  auto axis = [&](const std::string& dim) {
    Axis a;
    a.dim = dim;
    a.hier = Dim(w, dim).hierarchies.front().name;
    a.level = w.levels.at(dim);
    for (const auto& v : Ordering(w, dim, a.level)) {
      for (size_t m = 0; m < w.members.at(dim).size(); ++m) {
        bool pass = true;
        for (const auto& p : preds) {
          if (p.dim == dim && !Holds(w, m, p)) pass = false;
        }
        if (pass && Value(w, dim, m, a.level) == v) {
          a.values.push_back(v);
          break;
        }
      }
    }
    return a;
  };

  NTable t;
  t.fact = fact.name;
  for (const auto& m : fact.measures) t.measures.push_back(m.name);
  t.col_axis = axis(cdim);
  t.row_axis = axis(rdim);

  const auto& rows = w.rows.at(fact.name);
  std::vector<char> pass(rows.size());
  std::vector<std::string> cval(rows.size()), rval(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    pass[i] = RowPasses(w, rows[i], preds);
    cval[i] = Value(w, cdim, rows[i].refs.at(cdim), t.col_axis.level);
    rval[i] = Value(w, rdim, rows[i].refs.at(rdim), t.row_axis.level);
  }
  for (const auto& rv : t.row_axis.values) {
    for (const auto& cv : t.col_axis.values) {
      std::vector<size_t> group;
      for (size_t i = 0; i < rows.size(); ++i) {
        if (pass[i] && cval[i] == cv && rval[i] == rv) group.push_back(i);
      }
      if (group.empty()) continue;
      CellTuple cell;
      for (const auto& m : fact.measures) {
        if (m.agg == AggFunc::kDistinctSet) {
          std::vector<std::string> values;
          for (size_t i : group) values.push_back(Text(rows[i].measures.at(m.name)));
          std::sort(values.begin(), values.end());
          values.erase(std::unique(values.begin(), values.end()), values.end());
          cell.emplace_back(std::move(values));
          continue;
        }
        if (m.agg == AggFunc::kCount) {
          cell.emplace_back(static_cast<double>(group.size()));
          continue;
        }
        double acc = 0;
        bool first = true;
        for (size_t i : group) {
          double v = std::get<double>(rows[i].measures.at(m.name));
          if (m.agg == AggFunc::kMin) acc = first ? v : std::min(acc, v);
          else if (m.agg == AggFunc::kMax) acc = first ? v : std::max(acc, v);
          else acc += v;
          first = false;
        }
        if (m.agg == AggFunc::kAvg) acc /= static_cast<double>(group.size());
        cell.emplace_back(acc);
      }
      t.cells[{rv, cv}] = std::move(cell);
    }
  }
  for (const auto& p : preds) {
    FooterLine line{"", p.dim, p.param, p.op, p.literals};
    std::vector<std::string> owners;
    for (const auto& f : w.schema.facts) {
      if (Linked(w, f.name, p.dim)) owners.push_back(f.name);
    }
    if (owners.size() == 1) line.fact = owners.front();
    t.footer.push_back(std::move(line));
  }
  return t;
}

std::string Compare(const NTable& engine, const NTable& reference) {
  if (engine.fact != reference.fact) return "fact " + engine.fact + " vs " + reference.fact;
  if (engine.measures != reference.measures) return "measure list differs";
  if (!(engine.col_axis == reference.col_axis)) return "column axis differs";
  if (!(engine.row_axis == reference.row_axis)) return "row axis differs";
  if (!(engine.footer == reference.footer)) return "footer differs";
  if (engine.cells.size() != reference.cells.size()) {
    return "cell count " + std::to_string(engine.cells.size()) + " vs " +
           std::to_string(reference.cells.size());
  }
  for (const auto& [key, cell] : reference.cells) {
    auto it = engine.cells.find(key);
    const std::string where = "(" + key.first + ", " + key.second + ")";
    if (it == engine.cells.end()) return "missing cell " + where;
    if (it->second.size() != cell.size()) return "tuple size at " + where;
    for (size_t i = 0; i < cell.size(); ++i) {
      const auto* a = std::get_if<double>(&it->second[i]);
      const auto* b = std::get_if<double>(&cell[i]);
      if ((a == nullptr) != (b == nullptr)) return "value kind at " + where;
      if (a == nullptr) {
        if (it->second[i] != cell[i]) return "value set at " + where;
        continue;
      }
      bool integral = *b == std::floor(*b) && *a == std::floor(*a);
      bool close = integral ? *a == *b
                            : std::fabs(*a - *b) <= 1e-9 * std::max(std::fabs(*a), std::fabs(*b));
      if (!close) return "value at " + where + ": " + Text(*a) + " vs " + Text(*b);
    }
  }
  return {};
}

}  // namespace oracle
