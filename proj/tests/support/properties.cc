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

#include "support/properties.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>

#include "constellation/algebra.h"
#include "constellation/errors.h"
#include "constellation/mdql.h"
#include "constellation/ntable.h"
#include "constellation/sql_emitter.h"
#include "support/oracle.h"
#include "support/random_constellation.h"
#include "support/sql_eval.h"

namespace properties {

using namespace constellation;
using gen::Rng;

namespace {

template <class T>
const T& Pick(Rng& rng, const std::vector<T>& items) {
  return items[std::uniform_int_distribution<size_t>(0, items.size() - 1)(rng)];
}

size_t Below(Rng& rng, size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng); }

void Record(Result& r, const std::string& what) {
  if (r.failures++ == 0) r.first_failure = what;
}

struct Scenario {
  AnalysisContext ctx;
  std::vector<AnalysisContext> splits;
  std::string trail;  // commands applied, for failure reports
};

// Generates a fresh constellation every few calls and walks a few random
// commands from its initial context.
class ScenarioSource {
 public:
  explicit ScenarioSource(uint64_t seed) : rng_(seed) {}

  Rng& rng() { return rng_; }

  Scenario Next(int max_steps = 4) {
    if (!dataset_ || uses_++ % 8 == 0) {
      gen::Limits limits;
      limits.max_rows = 240;
      dataset_ = gen::RandomConstellation(rng_, limits);
      ++datasets_;
    }
    Scenario s{AnalysisContext::Initial(dataset_->store), {}, {}};
    const int steps = std::uniform_int_distribution<int>(0, max_steps)(rng_);
    for (int i = 0; i < steps; ++i) {
      auto cmd = gen::RandomCommand(rng_, s.ctx, s.splits.size());
      try {
        auto out = mdql::Evaluate(s.ctx, s.splits, cmd);
        s.ctx = std::move(out.context);
        s.splits = std::move(out.splits);
        s.trail += mdql::PrintCommand(cmd) + "; ";
      } catch (const OlapError&) {
      }
    }
    return s;
  }

  std::string Describe(const Scenario& s) const {
    return "dataset #" + std::to_string(datasets_) + " after [" + s.trail + "]";
  }

 private:
  Rng rng_;
  std::optional<gen::Dataset> dataset_;
  int uses_ = 0;
  int datasets_ = 0;
};

// Runs `attempt` until it reports `cases` applicable cases. An attempt returns
// false when its preconditions did not hold.
Result Run(const std::string& name, uint64_t seed, int cases,
           const std::function<bool(ScenarioSource&, Result&)>& attempt) {
  Result r;
  r.name = name;
  ScenarioSource source(seed);
  for (int tries = 0; r.cases < cases && tries < cases * 40; ++tries) {
    try {
      if (attempt(source, r)) ++r.cases;
    } catch (const OlapError& e) {
      ++r.cases;
      Record(r, "unexpected " + std::string(e.code_name()) + ": " + e.what());
    }
  }
  return r;
}

std::vector<std::string> Params(const AnalysisContext& ctx, const std::string& dim, bool with_key) {
  std::vector<std::string> out;
  const Dimension* d = ctx.schema.FindDimension(dim);
  for (const auto& a : d->attributes) {
    if (a == kAllParam || (!with_key && a == d->key)) continue;
    out.push_back(a);
  }
  return out;
}

std::optional<NTable> TryBuild(const AnalysisContext& ctx) {
  try {
    return ntable::Build(ctx);
  } catch (const OlapError&) {
    return std::nullopt;
  }
}

// Multiset of fact rows as (key of each linked member, value of `param` on
// `dim`, remaining measures as text).
std::vector<std::vector<std::string>> Projection(const AnalysisContext& ctx, const std::string& fact,
                                                 const std::string& dim, const std::string& param,
                                                 bool param_is_measure) {
  const InstanceStore& store = *ctx.store;
  const FactTable& table = store.fact(fact);
  const Fact& def = *ctx.schema.FindFact(fact);
  std::vector<std::vector<std::string>> out;
  for (size_t r = 0; r < table.row_count; ++r) {
    std::vector<std::string> row;
    for (const auto& d : ctx.schema.Linked(fact)) {
      const DimensionTable& dt = store.dimension(d);
      row.emplace_back(dt.Value((*table.Refs(d))[r], dt.key));
    }
    if (param_is_measure) {
      row.push_back(table.Measure(param)->Text(r));
    } else {
      row.emplace_back(store.dimension(dim).Value((*table.Refs(dim))[r], param));
    }
    for (const auto& m : def.measures) {
      if (m.name != param) row.push_back(table.Measure(m.name)->Text(r));
    }
    out.push_back(std::move(row));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool SameExceptLevel(const AnalysisContext& a, const AnalysisContext& b, const std::string& dim) {
  auto la = a.display_levels;
  auto lb = b.display_levels;
  la.erase(dim);
  lb.erase(dim);
  return a.schema == b.schema && la == lb && a.restrictions == b.restrictions &&
         a.orderings == b.orderings && a.store == b.store;
}

}  // namespace

std::vector<Result> CheckAlgebraLaws(uint64_t seed, int cases) {
  std::vector<Result> results;

  results.push_back(Run("drotate involution", seed, cases, [](ScenarioSource& src, Result& r) {
    Scenario s = src.Next();
    const Fact& fact = Pick(src.rng(), s.ctx.schema.facts);
    const auto& linked = s.ctx.schema.Linked(fact.name);
    const std::string a = Pick(src.rng(), linked);
    std::string b = Pick(src.rng(), linked);
    if (a == b) return false;
    auto twice = algebra::DRotate(algebra::DRotate(s.ctx, fact.name, a, b), fact.name, a, b);
    if (!(twice == s.ctx)) Record(r, src.Describe(s) + " DROTATE " + fact.name + ": " + a + ", " + b);
    return true;
  }));

  results.push_back(Run("drotate locality", seed + 1, cases, [](ScenarioSource& src, Result& r) {
    Scenario s = src.Next();
    const Fact& fact = Pick(src.rng(), s.ctx.schema.facts);
    const auto& linked = s.ctx.schema.Linked(fact.name);
    const std::string a = Pick(src.rng(), linked);
    const std::string b = Pick(src.rng(), linked);
    if (a == b) return false;
    auto out = algebra::DRotate(s.ctx, fact.name, a, b);
    auto expected = s.ctx.schema.param;
    auto& list = expected[fact.name];
    std::iter_swap(std::find(list.begin(), list.end(), a), std::find(list.begin(), list.end(), b));
    bool ok = out.schema.param == expected && out.schema.facts == s.ctx.schema.facts &&
              out.schema.dims == s.ctx.schema.dims && out.display_levels == s.ctx.display_levels &&
              out.restrictions == s.ctx.restrictions && out.orderings == s.ctx.orderings &&
              out.store == s.ctx.store;
    // Rotating dimensions outside the displayed pair leaves the n-table alone.
    const auto& current = s.ctx.schema.Linked(s.ctx.current_fact());
    auto pos = [&](const std::string& d) { return std::find(current.begin(), current.end(), d) - current.begin(); };
    if (ok && fact.name == s.ctx.current_fact() && pos(a) >= 2 && pos(b) >= 2) {
      auto before = TryBuild(s.ctx);
      auto after = TryBuild(out);
      ok = before.has_value() == after.has_value() && (!before || *before == *after);
    }
    if (!ok) Record(r, src.Describe(s) + " DROTATE " + fact.name + ": " + a + " WITH " + b);
    return true;
  }));

  results.push_back(Run("hrotate involution", seed + 2, cases, [](ScenarioSource& src, Result& r) {
    Scenario s = src.Next();
    const Dimension& d = Pick(src.rng(), s.ctx.schema.dims);
    if (d.hierarchies.size() < 2) return false;
    const std::string h0 = d.current().name;
    const std::string h1 = d.hierarchies[1 + Below(src.rng(), d.hierarchies.size() - 1)].name;
    auto once = algebra::HRotate(s.ctx, d.name, h0, h1);
    auto twice = algebra::HRotate(once, d.name, h0, h1);
    const bool kept = d.FindHierarchy(h1)->Contains(s.ctx.display_level(d.name));
    bool ok = kept ? twice == s.ctx : SameExceptLevel(twice, s.ctx, d.name);
    if (!ok) Record(r, src.Describe(s) + " HROTATE " + d.name + " " + h0 + "/" + h1);
    return true;
  }));

  results.push_back(Run("frotate involution", seed + 3, cases, [](ScenarioSource& src, Result& r) {
    Scenario s = src.Next();
    if (s.ctx.schema.facts.size() < 2) return false;
    const std::string a = Pick(src.rng(), s.ctx.schema.facts).name;
    const std::string b = Pick(src.rng(), s.ctx.schema.facts).name;
    if (a == b) return false;
    auto twice = algebra::FRotate(algebra::FRotate(s.ctx, a, b), a, b);
    if (!(twice == s.ctx)) Record(r, src.Describe(s) + " FROTATE " + a + " WITH " + b);
    return true;
  }));

  results.push_back(Run("switch involution", seed + 4, cases, [](ScenarioSource& src, Result& r) {
    Scenario s = src.Next();
    const Dimension& d = Pick(src.rng(), s.ctx.schema.dims);
    const std::string p = Pick(src.rng(), d.current().params);
    auto order = s.ctx.Ordering(d.name, p);
    Literal v1 = Pick(src.rng(), order);
    Literal v2 = Pick(src.rng(), order);
    auto twice = algebra::Switch(algebra::Switch(s.ctx, d.name, p, v1, v2), d.name, p, v1, v2);
    if (!(twice == s.ctx)) {
      Record(r, src.Describe(s) + " SWITCH " + d.name + "." + p + " " + LiteralText(v1) + "/" + LiteralText(v2));
    }
    return true;
  }));

  results.push_back(Run("drilldown then rollup", seed + 5, cases, [](ScenarioSource& src, Result& r) {
    Scenario s = src.Next();
    const Dimension& d = Pick(src.rng(), s.ctx.schema.dims);
    const auto& params = d.current().params;
    const std::string level = s.ctx.display_level(d.name);
    const int li = d.current().IndexOf(level);
    const bool down = std::bernoulli_distribution(0.5)(src.rng());
    AnalysisContext back;
    std::string p;
    if (down) {
      if (li < 1) return false;
      p = params[Below(src.rng(), static_cast<size_t>(li))];
      auto moved = algebra::DrillDown(s.ctx, d.name, p);
      if (moved.display_level(d.name) != p) Record(r, src.Describe(s) + " DRILLDOWN level");
      back = algebra::RollUp(moved, d.name, level);
    } else {
      if (li + 1 >= static_cast<int>(params.size())) return false;
      p = params[static_cast<size_t>(li) + 1 + Below(src.rng(), params.size() - static_cast<size_t>(li) - 1)];
      back = algebra::DrillDown(algebra::RollUp(s.ctx, d.name, p), d.name, level);
    }
    if (!(back == s.ctx)) Record(r, src.Describe(s) + (down ? " DRILLDOWN " : " ROLLUP ") + d.name + " TO " + p);
    return true;
  }));

  results.push_back(Run("push then pull", seed + 6, cases, [](ScenarioSource& src, Result& r) {
    Scenario s = src.Next();
    const Fact& fact = Pick(src.rng(), s.ctx.schema.facts);
    const std::string dim = Pick(src.rng(), s.ctx.schema.Linked(fact.name));
    auto params = Params(s.ctx, dim, false);
    if (params.empty()) return false;
    const std::string p = Pick(src.rng(), params);
    AnalysisContext pushed, pulled;
    try {
      pushed = algebra::Push(s.ctx, dim, p, fact.name);
      pulled = algebra::Pull(pushed, fact.name, p, dim);
    } catch (const OlapError&) {
      return false;
    }
    bool ok = pulled.schema.FindFact(fact.name)->measures == fact.measures &&
              pulled.schema.FindDimension(dim)->HasAttribute(p) &&
              Projection(s.ctx, fact.name, dim, p, false) == Projection(pulled, fact.name, dim, p, false) &&
              Projection(pushed, fact.name, dim, p, true) == Projection(s.ctx, fact.name, dim, p, false);
    if (!ok) Record(r, src.Describe(s) + " PUSH/PULL " + dim + "." + p + " / " + fact.name);
    return true;
  }));

  results.push_back(Run("tsplit count", seed + 7, cases, [](ScenarioSource& src, Result& r) {
    Scenario s = src.Next();
    auto parts = algebra::TSplit(s.ctx);
    bool ok = parts.size() == s.ctx.schema.facts.size();
    for (size_t i = 0; ok && i < parts.size(); ++i) {
      ok = parts[i].schema.facts.size() == 1 && parts[i].schema.facts[0] == s.ctx.schema.facts[i] &&
           parts[i].schema.Linked(parts[i].current_fact()) == s.ctx.schema.Linked(parts[i].current_fact());
    }
    if (!ok) Record(r, src.Describe(s) + " TSPLIT");
    return true;
  }));

  results.push_back(Run("split partitions rows", seed + 8, cases, [](ScenarioSource& src, Result& r) {
    Scenario s = src.Next();
    AnalysisContext star = s.ctx;
    if (star.schema.facts.size() > 1) star = Pick(src.rng(), algebra::TSplit(s.ctx));
    const std::string dim = Pick(src.rng(), star.schema.Linked(star.current_fact()));
    const std::string p = Pick(src.rng(), Params(star, dim, true));
    auto whole = algebra::RestrictedRows(star);
    std::vector<uint32_t> pieces;
    for (const auto& part : algebra::Split(star, dim, p)) {
      auto rows = algebra::RestrictedRows(part);
      pieces.insert(pieces.end(), rows.begin(), rows.end());
    }
    std::sort(whole.begin(), whole.end());
    std::sort(pieces.begin(), pieces.end());
    if (whole != pieces) Record(r, src.Describe(s) + " SPLIT " + dim + "." + p);
    return true;
  }));

  results.push_back(Run("tautological slice", seed + 9, cases, [](ScenarioSource& src, Result& r) {
    Scenario s = src.Next();
    auto before = TryBuild(s.ctx);
    if (!before) return false;
    const std::string dim = Pick(src.rng(), s.ctx.schema.Linked(s.ctx.current_fact()));
    auto params = Params(s.ctx, dim, true);
    params.emplace_back(kAllParam);
    Predicate pred{dim, Pick(src.rng(), params), Comparator::kIn, {}};
    for (const auto& v : s.ctx.Ordering(dim, pred.param)) pred.literals.emplace_back(v);
    auto after = ntable::Build(algebra::Slice(s.ctx, dim, pred));
    if (after.cells != before->cells || !(after.col_axis == before->col_axis) ||
        !(after.row_axis == before->row_axis)) {
      Record(r, src.Describe(s) + " SLICE " + PredicateText(pred));
    }
    return true;
  }));

  results.push_back(Run("sum conservation", seed + 10, cases, [](ScenarioSource& src, Result& r) {
    Scenario s = src.Next();
    auto table = TryBuild(s.ctx);
    if (!table) return false;
    const Fact& fact = s.ctx.schema.facts.front();
    const FactTable& data = s.ctx.store->fact(fact.name);
    auto rows = algebra::RestrictedRows(s.ctx);
    const auto& linked = s.ctx.schema.Linked(fact.name);
    AnalysisContext top = s.ctx;
    for (size_t i = 0; i < 2; ++i) {
      if (top.display_level(linked[i]) != kAllParam) top = algebra::RollUp(top, linked[i], kAllParam);
    }
    auto total = ntable::Build(top);
    bool any = false;
    for (size_t m = 0; m < fact.measures.size(); ++m) {
      if (fact.measures[m].agg != AggFunc::kSum) continue;
      any = true;
      double expected = 0;
      for (uint32_t row : rows) expected += data.Measure(fact.measures[m].name)->numbers[row];
      double cells = 0;
      for (const auto& [key, cell] : table->cells) cells += std::get<double>(cell[m]);
      const CellTuple* all = total.Cell(std::string(kAllValue), std::string(kAllValue));
      double rolled = all == nullptr ? 0 : std::get<double>((*all)[m]);
      const double tol = 1e-9 * std::max(1.0, std::fabs(expected));
      if (std::fabs(cells - expected) > tol || std::fabs(rolled - expected) > tol) {
        Record(r, src.Describe(s) + " sum of " + fact.measures[m].name);
      }
    }
    return any;
  }));

  return results;
}

Result CheckOracleEquivalence(uint64_t seed, int constellations, int max_ops) {
  Result r;
  r.name = "oracle equivalence";
  Rng rng(seed);
  size_t accepted = 0;
  size_t rejected = 0;
  size_t tables = 0;
  size_t rows = 0;
  for (int c = 0; c < constellations; ++c) {
    gen::Dataset dataset = gen::RandomConstellation(rng);
    AnalysisContext ctx = AnalysisContext::Initial(dataset.store);
    for (const auto& [name, fact] : dataset.store->facts()) rows += fact->row_count;
    std::vector<AnalysisContext> splits;
    oracle::State model{oracle::FromStore(*dataset.store), {}};
    std::string trail;
    auto compare = [&](const std::string& where) {
      std::optional<NTable> engine;
      std::string engine_error;
      try {
        engine = ntable::Build(ctx);
      } catch (const OlapError& e) {
        engine_error = e.code_name();
      }
      std::optional<NTable> reference;
      try {
        reference = oracle::Build(model.world);
      } catch (const oracle::Rejected&) {
      }
      if (engine.has_value() != reference.has_value()) {
        Record(r, where + ": engine " + (engine ? "built" : "refused (" + engine_error + ")") +
                      ", reference " + (reference ? "built" : "refused"));
        return false;
      }
      if (engine) {
        ++tables;
        std::string diff = oracle::Compare(*engine, *reference);
        if (!diff.empty()) {
          Record(r, where + ": " + diff);
          return false;
        }
      }
      return true;
    };
    ++r.cases;
    const int failures = r.failures;
    if (!compare("constellation " + std::to_string(c) + " initial")) continue;
    const int ops = std::uniform_int_distribution<int>(1, max_ops)(rng);
    for (int i = 0; i < ops && r.failures == failures; ++i) {
      auto cmd = gen::RandomCommand(rng, ctx, splits.size());
      trail += mdql::PrintCommand(cmd) + "; ";
      const std::string where = "constellation " + std::to_string(c) + " [" + trail + "]";
      std::optional<mdql::Outcome> out;
      std::string engine_error;
      try {
        out = mdql::Evaluate(ctx, splits, cmd);
      } catch (const OlapError& e) {
        engine_error = std::string(e.code_name()) + ": " + e.what();
      }
      std::optional<oracle::State> next;
      std::string model_error;
      try {
        next = oracle::Apply(model, cmd);
      } catch (const oracle::Rejected& e) {
        model_error = e.what();
      }
      if (out.has_value() != next.has_value()) {
        Record(r, where + ": engine " + (out ? "accepted" : "rejected (" + engine_error + ")") +
                      ", reference " + (next ? "accepted" : "rejected (" + model_error + ")"));
        break;
      }
      if (!out) {
        ++rejected;
        continue;
      }
      ++accepted;
      ctx = std::move(out->context);
      splits = std::move(out->splits);
      model = std::move(*next);
      if (splits.size() != model.splits.size()) {
        Record(r, where + ": split count differs");
        break;
      }
      compare(where);
    }
  }
  r.detail = std::to_string(accepted) + " ops accepted and " + std::to_string(rejected) +
             " rejected by both; " + std::to_string(tables) + " n-tables compared; " +
             std::to_string(rows) + " fact rows generated";
  return r;
}

Result CheckParserRoundTrip(uint64_t seed, int cases) {
  Result r;
  r.name = "parser round trip";
  Rng rng(seed);
  for (int i = 0; i < cases; ++i) {
    mdql::Command ast = gen::RandomAst(rng);
    const std::string text = mdql::PrintCommand(ast);
    ++r.cases;
    try {
      mdql::Command parsed = mdql::Parse(text);
      if (!(parsed == ast)) {
        Record(r, "parse(print(ast)) differs for: " + text);
      } else if (mdql::PrintCommand(parsed) != text) {
        Record(r, "print is not stable for: " + text);
      } else if (!(mdql::DecodeCommand(mdql::EncodeCommand(ast)) == ast)) {
        Record(r, "JSON encoding does not round-trip for: " + text);
      }
    } catch (const OlapError& e) {
      Record(r, "'" + text + "' does not parse: " + e.what());
    }
  }
  return r;
}

Result CheckSqlAgreement(uint64_t seed, int constellations, int max_ops) {
  Result r;
  r.name = "sql agreement";
  Rng rng(seed);
  for (int c = 0; c < constellations; ++c) {
    gen::Dataset dataset = gen::RandomConstellation(rng);
    AnalysisContext ctx = AnalysisContext::Initial(dataset.store);
    std::vector<AnalysisContext> splits;
    std::string trail;
    for (int i = 0; i <= max_ops; ++i) {
      if (i > 0) {
        auto cmd = gen::RandomCommand(rng, ctx, splits.size());
        if (std::holds_alternative<mdql::PullCmd>(cmd)) continue;
        try {
          auto out = mdql::Evaluate(ctx, splits, cmd);
          ctx = std::move(out.context);
          splits = std::move(out.splits);
          trail += mdql::PrintCommand(cmd) + "; ";
        } catch (const OlapError&) {
          continue;
        }
      }
      auto table = TryBuild(ctx);
      if (!table) continue;
      ++r.cases;
      const std::string where = "constellation " + std::to_string(c) + " [" + trail + "]";
      try {
        const std::string sql = sql::EmitQuery(ctx);
        auto result = sqleval::Execute(sql, sqleval::Export(ctx));
        std::string diff = sqleval::CompareWithNTable(result, *table);
        if (!diff.empty()) Record(r, where + ": " + diff + "\n" + sql);
      } catch (const std::exception& e) {
        Record(r, where + ": " + e.what());
      }
    }
  }
  return r;
}

}  // namespace properties
