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

#include "constellation/schema.h"

#include <algorithm>
#include <set>

#include "constellation/errors.h"
#include "constellation/value.h"

namespace constellation {

std::string_view MeasureKindName(MeasureKind kind) {
  return kind == MeasureKind::kNumeric ? "numeric" : "text";
}

std::string_view AggFuncName(AggFunc agg) {
  switch (agg) {
    case AggFunc::kSum: return "sum";
    case AggFunc::kMin: return "min";
    case AggFunc::kMax: return "max";
    case AggFunc::kCount: return "count";
    case AggFunc::kAvg: return "avg";
    case AggFunc::kDistinctSet: return "distinct_set";
  }
  return "sum";
}

std::optional<MeasureKind> MeasureKindFromName(std::string_view name) {
  if (name == "numeric") return MeasureKind::kNumeric;
  if (name == "text") return MeasureKind::kText;
  return std::nullopt;
}

std::optional<AggFunc> AggFuncFromName(std::string_view name) {
  for (AggFunc agg : {AggFunc::kSum, AggFunc::kMin, AggFunc::kMax, AggFunc::kCount,
                      AggFunc::kAvg, AggFunc::kDistinctSet}) {
    if (AggFuncName(agg) == name) return agg;
  }
  return std::nullopt;
}

AggFunc DefaultAgg(MeasureKind kind) {
  return kind == MeasureKind::kNumeric ? AggFunc::kSum : AggFunc::kDistinctSet;
}

const MeasureDef* Fact::FindMeasure(std::string_view measure) const {
  for (const auto& m : measures) {
    if (m.name == measure) return &m;
  }
  return nullptr;
}

bool Hierarchy::Contains(std::string_view param) const { return IndexOf(param) >= 0; }

int Hierarchy::IndexOf(std::string_view param) const {
  auto it = std::find(params.begin(), params.end(), param);
  return it == params.end() ? -1 : static_cast<int>(it - params.begin());
}

bool Dimension::HasAttribute(std::string_view attribute) const {
  return std::find(attributes.begin(), attributes.end(), attribute) != attributes.end();
}

const Hierarchy* Dimension::FindHierarchy(std::string_view hierarchy) const {
  for (const auto& h : hierarchies) {
    if (h.name == hierarchy) return &h;
  }
  return nullptr;
}

const Fact* ConstellationSchema::FindFact(std::string_view fact) const {
  for (const auto& f : facts) {
    if (f.name == fact) return &f;
  }
  return nullptr;
}

Fact* ConstellationSchema::FindFact(std::string_view fact) {
  for (auto& f : facts) {
    if (f.name == fact) return &f;
  }
  return nullptr;
}

const Dimension* ConstellationSchema::FindDimension(std::string_view dim) const {
  for (const auto& d : dims) {
    if (d.name == dim) return &d;
  }
  return nullptr;
}

Dimension* ConstellationSchema::FindDimension(std::string_view dim) {
  for (auto& d : dims) {
    if (d.name == dim) return &d;
  }
  return nullptr;
}

const std::vector<std::string>& ConstellationSchema::Linked(std::string_view fact) const {
  static const std::vector<std::string> kEmpty;
  auto it = param.find(std::string(fact));
  return it == param.end() ? kEmpty : it->second;
}

bool ConstellationSchema::IsLinked(std::string_view fact, std::string_view dim) const {
  const auto& linked = Linked(fact);
  return std::find(linked.begin(), linked.end(), dim) != linked.end();
}

std::vector<std::string> ConstellationSchema::FactsLinkedTo(std::string_view dim) const {
  std::vector<std::string> out;
  for (const auto& f : facts) {
    if (IsLinked(f.name, dim)) out.push_back(f.name);
  }
  return out;
}

void ValidationReport::Add(Severity severity, std::string location, std::string message) {
  if (severity == Severity::kError) ok = false;
  issues.push_back({severity, std::move(location), std::move(message)});
}

namespace {

void CheckName(ValidationReport& report, const std::string& location, const std::string& name) {
  if (!IsIdentifier(name)) {
    report.Add(Severity::kError, location, "invalid identifier '" + name + "'");
  }
}

void ValidateHierarchy(ValidationReport& report, const Dimension& dim, const Hierarchy& h,
                       const std::string& loc) {
  CheckName(report, loc, h.name);
  if (h.params.size() < 2) {
    report.Add(Severity::kError, loc, "hierarchy needs at least two parameters");
  }
  std::set<std::string> seen;
  for (const auto& p : h.params) {
    if (!seen.insert(p).second) {
      report.Add(Severity::kError, loc, "duplicate parameter '" + p + "' in hierarchy");
    }
    if (!dim.HasAttribute(p)) {
      report.Add(Severity::kError, loc, "parameter '" + p + "' is not an attribute of the dimension");
    }
  }
  if (h.params.empty() || h.params.back() != kAllParam) {
    report.Add(Severity::kError, loc, "hierarchy must end with all");
  }
  if (h.params.empty() || h.params.front() != dim.key) {
    report.Add(Severity::kError, loc, "hierarchy must begin with the key '" + dim.key + "'");
  }
}

void ValidateDimension(ValidationReport& report, const Dimension& dim) {
  const std::string loc = "dimensions[" + dim.name + "]";
  CheckName(report, loc, dim.name);
  std::set<std::string> attrs;
  for (const auto& a : dim.attributes) {
    CheckName(report, loc, a);
    if (!attrs.insert(a).second) {
      report.Add(Severity::kError, loc, "duplicate attribute '" + a + "'");
    }
  }
  if (!attrs.contains(std::string(kAllParam))) {
    report.Add(Severity::kError, loc, "attributes must contain all");
  }
  if (dim.key.empty() || !attrs.contains(dim.key)) {
    report.Add(Severity::kError, loc, "key '" + dim.key + "' is not an attribute");
  }
  if (dim.key == kAllParam) {
    report.Add(Severity::kError, loc, "key cannot be all");
  }
  if (dim.hierarchies.empty()) {
    report.Add(Severity::kError, loc, "dimension needs at least one hierarchy");
  }
  std::set<std::string> hier_names;
  for (const auto& h : dim.hierarchies) {
    const std::string hloc = loc + ".hierarchies[" + h.name + "]";
    if (!hier_names.insert(h.name).second) {
      report.Add(Severity::kError, hloc, "duplicate hierarchy name");
    }
    ValidateHierarchy(report, dim, h, hloc);
  }
}

}  // namespace

ValidationReport ValidateSchema(const ConstellationSchema& schema) {
  ValidationReport report;
  CheckName(report, "name", schema.name);
  if (schema.facts.empty()) {
    report.Add(Severity::kError, "facts", "schema needs at least one fact");
  }

  std::set<std::string> names;
  for (const auto& d : schema.dims) {
    if (!names.insert(d.name).second) {
      report.Add(Severity::kError, "dimensions[" + d.name + "]", "duplicate dimension name");
    }
    ValidateDimension(report, d);
  }

  for (const auto& f : schema.facts) {
    const std::string loc = "facts[" + f.name + "]";
    CheckName(report, loc, f.name);
    if (!names.insert(f.name).second) {
      report.Add(Severity::kError, loc, "duplicate fact or dimension name '" + f.name + "'");
    }
    if (f.measures.empty()) {
      report.Add(Severity::kError, loc, "fact needs at least one measure");
    }
    std::set<std::string> measure_names;
    for (const auto& m : f.measures) {
      const std::string mloc = loc + ".measures[" + m.name + "]";
      CheckName(report, mloc, m.name);
      if (!measure_names.insert(m.name).second) {
        report.Add(Severity::kError, mloc, "duplicate measure name");
      }
      if (m.kind == MeasureKind::kText && m.agg != AggFunc::kCount &&
          m.agg != AggFunc::kDistinctSet) {
        report.Add(Severity::kError, mloc,
                   "text measure only supports count or distinct_set aggregation");
      }
    }

    auto it = schema.param.find(f.name);
    if (it == schema.param.end()) {
      report.Add(Severity::kError, loc, "fact has no linked dimensions");
      continue;
    }
    const auto& linked = it->second;
    if (linked.size() < 2) {
      report.Add(Severity::kError, loc, "fact needs two current dimensions");
    }
    std::set<std::string> seen;
    for (const auto& dname : linked) {
      if (!seen.insert(dname).second) {
        report.Add(Severity::kError, loc, "dimension '" + dname + "' linked twice");
      }
      const Dimension* dim = schema.FindDimension(dname);
      if (dim == nullptr) {
        report.Add(Severity::kError, loc, "linked dimension '" + dname + "' does not exist");
        continue;
      }
      for (const auto& m : f.measures) {
        if (dim->HasAttribute(m.name)) {
          report.Add(Severity::kError, loc + ".measures[" + m.name + "]",
                     "measure name clashes with an attribute of dimension '" + dname + "'");
        }
      }
    }
  }

  for (const auto& [fact, dims] : schema.param) {
    if (schema.FindFact(fact) == nullptr) {
      report.Add(Severity::kError, "param[" + fact + "]", "param refers to unknown fact");
    }
  }
  for (const auto& d : schema.dims) {
    if (schema.FactsLinkedTo(d.name).empty()) {
      report.Add(Severity::kWarning, "dimensions[" + d.name + "]",
                 "dimension is not linked to any fact");
    }
  }
  return report;
}

CurrentElements GetCurrentElements(const ConstellationSchema& schema) {
  if (schema.facts.empty()) {
    throw OlapError(ErrorCode::kValidationError, "schema has no facts");
  }
  CurrentElements out;
  out.fact = schema.facts.front().name;
  const auto& linked = schema.Linked(out.fact);
  if (linked.size() < 2) {
    throw OlapError(ErrorCode::kValidationError, "fact needs two current dimensions");
  }
  out.col_dim = linked[0];
  out.row_dim = linked[1];
  const Dimension* col = schema.FindDimension(out.col_dim);
  const Dimension* row = schema.FindDimension(out.row_dim);
  if (col == nullptr || row == nullptr || col->hierarchies.empty() || row->hierarchies.empty()) {
    throw OlapError(ErrorCode::kValidationError, "current dimensions are incomplete");
  }
  out.col_hierarchy = col->current().name;
  out.row_hierarchy = row->current().name;
  return out;
}

}  // namespace constellation
