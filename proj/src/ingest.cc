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

#include "constellation/ingest.h"

#include <fstream>
#include <set>
#include <sstream>

#include "constellation/csv.h"
#include "constellation/errors.h"
#include "constellation/value.h"

namespace constellation::ingest {

namespace {

using nlohmann::json;

class DocumentReader {
 public:
  explicit DocumentReader(std::string_view source) : source_(source) {}

  [[noreturn]] void Fail(const std::string& path, const std::string& message) const {
    throw OlapError(ErrorCode::kLoadError, source_ + ": " + path + ": " + message,
                    source_ + ":" + path);
  }

  const json& Field(const json& obj, const char* name, const std::string& path) const {
    if (!obj.is_object()) Fail(path, "expected an object");
    auto it = obj.find(name);
    if (it == obj.end()) Fail(path, std::string("missing field '") + name + "'");
    return *it;
  }

  std::string Name(const json& value, const std::string& path) const {
    if (!value.is_string()) Fail(path, "expected a string");
    std::string name = value.get<std::string>();
    if (name == kAllParam) Fail(path, "reserved parameter 'all' must not be declared");
    return name;
  }

  const json& Array(const json& value, const std::string& path) const {
    if (!value.is_array()) Fail(path, "expected an array");
    return value;
  }

 private:
  std::string source_;
};

MeasureDef ReadMeasure(const DocumentReader& r, const json& doc, const std::string& path) {
  MeasureDef m;
  if (doc.is_string()) {
    m.name = r.Name(doc, path);
    m.agg = DefaultAgg(m.kind);
    return m;
  }
  m.name = r.Name(r.Field(doc, "name", path), path + ".name");
  if (doc.contains("kind")) {
    auto kind = MeasureKindFromName(r.Name(doc.at("kind"), path + ".kind"));
    if (!kind) r.Fail(path + ".kind", "kind must be numeric or text");
    m.kind = *kind;
  }
  m.agg = DefaultAgg(m.kind);
  if (doc.contains("agg")) {
    auto agg = AggFuncFromName(r.Name(doc.at("agg"), path + ".agg"));
    if (!agg) r.Fail(path + ".agg", "agg must be one of sum, min, max, count, avg, distinct_set");
    m.agg = *agg;
  }
  return m;
}

Dimension ReadDimension(const DocumentReader& r, const json& doc, const std::string& path) {
  Dimension d;
  d.name = r.Name(r.Field(doc, "name", path), path + ".name");
  d.key = r.Name(r.Field(doc, "key", path), path + ".key");
  if (doc.contains("attributes")) {
    const json& attrs = r.Array(doc.at("attributes"), path + ".attributes");
    for (size_t i = 0; i < attrs.size(); ++i) {
      d.attributes.push_back(r.Name(attrs[i], path + ".attributes[" + std::to_string(i) + "]"));
    }
  }
  const json& hiers = r.Array(r.Field(doc, "hierarchies", path), path + ".hierarchies");
  for (size_t i = 0; i < hiers.size(); ++i) {
    const std::string hpath = path + ".hierarchies[" + std::to_string(i) + "]";
    Hierarchy h;
    h.name = r.Name(r.Field(hiers[i], "name", hpath), hpath + ".name");
    const json& params = r.Array(r.Field(hiers[i], "params", hpath), hpath + ".params");
    for (size_t j = 0; j < params.size(); ++j) {
      h.params.push_back(r.Name(params[j], hpath + ".params[" + std::to_string(j) + "]"));
    }
    h.params.emplace_back(kAllParam);
    d.hierarchies.push_back(std::move(h));
  }
  if (!doc.contains("attributes")) {
    // Key first, then hierarchy parameters in order of first mention.
    d.attributes.push_back(d.key);
    for (const auto& h : d.hierarchies) {
      for (const auto& p : h.params) {
        if (p != kAllParam && !d.HasAttribute(p)) d.attributes.push_back(p);
      }
    }
  }
  d.attributes.emplace_back(kAllParam);
  return d;
}

// "line:column" of the first quoted occurrence of the innermost name in a
// validation location such as "dimensions[shop].hierarchies[h_x]".
std::string PositionOf(std::string_view text, const std::string& location) {
  auto open = location.rfind('[');
  auto close = location.rfind(']');
  if (text.empty() || open == std::string::npos || close == std::string::npos || close < open) {
    return {};
  }
  std::string needle = "\"" + location.substr(open + 1, close - open - 1) + "\"";
  auto pos = text.find(needle);
  if (pos == std::string_view::npos) return {};
  size_t line = 1, column = 1;
  for (size_t i = 0; i < pos; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return std::to_string(line) + ":" + std::to_string(column);
}

}  // namespace

ConstellationSchema LoadSchema(const json& doc, std::string_view source, std::string_view text) {
  DocumentReader r(source);
  ConstellationSchema schema;
  schema.name = r.Name(r.Field(doc, "name", "$"), "name");

  const json& dims = r.Array(r.Field(doc, "dimensions", "$"), "dimensions");
  for (size_t i = 0; i < dims.size(); ++i) {
    schema.dims.push_back(ReadDimension(r, dims[i], "dimensions[" + std::to_string(i) + "]"));
  }
  const json& facts = r.Array(r.Field(doc, "facts", "$"), "facts");
  for (size_t i = 0; i < facts.size(); ++i) {
    const std::string path = "facts[" + std::to_string(i) + "]";
    Fact f;
    f.name = r.Name(r.Field(facts[i], "name", path), path + ".name");
    const json& measures = r.Array(r.Field(facts[i], "measures", path), path + ".measures");
    for (size_t j = 0; j < measures.size(); ++j) {
      f.measures.push_back(
          ReadMeasure(r, measures[j], path + ".measures[" + std::to_string(j) + "]"));
    }
    const json& linked = r.Array(r.Field(facts[i], "dimensions", path), path + ".dimensions");
    if (schema.param.contains(f.name)) r.Fail(path, "duplicate fact name '" + f.name + "'");
    auto& param = schema.param[f.name];
    for (size_t j = 0; j < linked.size(); ++j) {
      param.push_back(r.Name(linked[j], path + ".dimensions[" + std::to_string(j) + "]"));
    }
    schema.facts.push_back(std::move(f));
  }

  ValidationReport report = ValidateSchema(schema);
  if (!report.ok) {
    std::string message = std::string(source) + ": invalid schema";
    std::string first_location;
    for (const auto& issue : report.issues) {
      if (issue.severity != Severity::kError) continue;
      std::string where = issue.location;
      std::string pos = PositionOf(text, issue.location);
      if (!pos.empty()) where = pos + " (" + where + ")";
      if (first_location.empty()) first_location = std::string(source) + ":" + where;
      message += "\n  " + where + ": " + issue.message;
    }
    throw OlapError(ErrorCode::kLoadError, message, first_location);
  }
  return schema;
}

ConstellationSchema LoadSchemaText(std::string_view text, std::string_view source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    size_t line = 1, column = 1;
    for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string where = std::string(source) + ":" + std::to_string(line) + ":" + std::to_string(column);
    throw OlapError(ErrorCode::kLoadError, where + ": malformed JSON: " + e.what(), where);
  }
  return LoadSchema(doc, source, text);
}

ConstellationSchema LoadSchemaFile(const std::filesystem::path& path) {
  return LoadSchemaText(ReadFile(path), path.filename().string());
}

json SchemaToDocument(const ConstellationSchema& schema) {
  json dims = json::array();
  for (const auto& d : schema.dims) {
    json attrs = json::array();
    for (const auto& a : d.attributes) {
      if (a != kAllParam) attrs.push_back(a);
    }
    json hiers = json::array();
    for (const auto& h : d.hierarchies) {
      json params = json::array();
      for (const auto& p : h.params) {
        if (p != kAllParam) params.push_back(p);
      }
      hiers.push_back({{"name", h.name}, {"params", std::move(params)}});
    }
    dims.push_back({{"name", d.name},
                    {"key", d.key},
                    {"attributes", std::move(attrs)},
                    {"hierarchies", std::move(hiers)}});
  }
  json facts = json::array();
  for (const auto& f : schema.facts) {
    json measures = json::array();
    for (const auto& m : f.measures) {
      measures.push_back({{"name", m.name},
                          {"kind", std::string(MeasureKindName(m.kind))},
                          {"agg", std::string(AggFuncName(m.agg))}});
    }
    facts.push_back(
        {{"name", f.name}, {"measures", std::move(measures)}, {"dimensions", schema.Linked(f.name)}});
  }
  return {{"name", schema.name}, {"facts", std::move(facts)}, {"dimensions", std::move(dims)}};
}

namespace {

[[noreturn]] void DataError(const std::string& file, size_t line, const std::string& message) {
  std::string where = line > 0 ? file + ":" + std::to_string(line) : file;
  throw OlapError(ErrorCode::kLoadError, where + ": " + message, where);
}

const std::string& RequireFile(const DataFiles& files, const std::string& name) {
  auto it = files.find(name);
  if (it == files.end()) DataError(name + ".csv", 0, "missing data file");
  return it->second;
}

// Column index per expected name; rejects missing, duplicate and unknown columns.
std::map<std::string, size_t> MatchHeader(const CsvTable& csv, const std::vector<std::string>& expected,
                                          const std::string& file) {
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < csv.header.size(); ++i) {
    const std::string& name = csv.header[i];
    if (std::find(expected.begin(), expected.end(), name) == expected.end()) {
      DataError(file, 1, "unexpected column '" + name + "'");
    }
    if (!index.emplace(name, i).second) DataError(file, 1, "duplicate column '" + name + "'");
  }
  for (const auto& name : expected) {
    if (!index.contains(name)) DataError(file, 1, "missing column '" + name + "'");
  }
  return index;
}

std::shared_ptr<const DimensionTable> LoadDimension(const Dimension& dim, const std::string& text) {
  const std::string file = dim.name + ".csv";
  CsvTable csv = ParseCsv(text, file);
  std::vector<std::string> attributes;
  for (const auto& a : dim.attributes) {
    if (a != kAllParam) attributes.push_back(a);
  }
  auto index = MatchHeader(csv, attributes, file);

  auto table = std::make_shared<DimensionTable>();
  table->name = dim.name;
  table->key = dim.key;
  table->attribute_order = attributes;
  for (const auto& a : attributes) table->columns[a];
  std::set<std::string> keys;
  for (size_t r = 0; r < csv.rows.size(); ++r) {
    const auto& row = csv.rows[r];
    for (const auto& a : attributes) {
      const std::string& value = row[index[a]];
      if (value.empty()) DataError(file, csv.lines[r], "missing value for '" + a + "'");
      table->columns[a].Append(value);
    }
    const std::string& key = row[index[dim.key]];
    if (!keys.insert(key).second) {
      DataError(file, csv.lines[r], "duplicate key " + dim.key + "='" + key + "'");
    }
  }
  table->member_count = csv.rows.size();
  return table;
}

std::shared_ptr<const FactTable> LoadFact(const ConstellationSchema& schema, const Fact& fact,
                                          const InstanceStore::DimensionMap& dims,
                                          const std::string& text) {
  const std::string file = fact.name + ".csv";
  CsvTable csv = ParseCsv(text, file);
  const auto& linked = schema.Linked(fact.name);
  std::vector<std::string> expected;
  for (const auto& d : linked) expected.push_back(d + "_id");
  for (const auto& m : fact.measures) expected.push_back(m.name);
  auto index = MatchHeader(csv, expected, file);

  auto table = std::make_shared<FactTable>();
  table->name = fact.name;
  table->dims = linked;
  for (const auto& m : fact.measures) table->measures[m.name].kind = m.kind;
  for (size_t r = 0; r < csv.rows.size(); ++r) {
    const auto& row = csv.rows[r];
    for (const auto& d : linked) {
      const DimensionTable& dim = *dims.at(d);
      const std::string& value = row[index[d + "_id"]];
      auto code = dim.Column(dim.key)->Find(value);
      if (!code) {
        DataError(file, csv.lines[r], "unknown " + dim.key + " '" + value + "' in column " + d + "_id");
      }
      table->refs[d].push_back(*code);
    }
    for (const auto& m : fact.measures) {
      const std::string& value = row[index[m.name]];
      MeasureColumn& column = table->measures[m.name];
      if (m.kind == MeasureKind::kNumeric) {
        auto number = ParseNumber(value);
        if (!number) {
          DataError(file, csv.lines[r], "measure '" + m.name + "' is not a number: '" + value + "'");
        }
        column.numbers.push_back(*number);
      } else {
        column.texts.push_back(value);
      }
    }
  }
  for (const auto& d : linked) table->refs[d];  // present even without rows
  table->row_count = csv.rows.size();
  return table;
}

}  // namespace

std::shared_ptr<const InstanceStore> LoadData(const ConstellationSchema& schema,
                                              const DataFiles& files) {
  InstanceStore::DimensionMap dims;
  for (const auto& d : schema.dims) {
    dims[d.name] = LoadDimension(d, RequireFile(files, d.name));
  }
  InstanceStore::FactMap facts;
  for (const auto& f : schema.facts) {
    facts[f.name] = LoadFact(schema, f, dims, RequireFile(files, f.name));
  }
  auto store = std::make_shared<const InstanceStore>(schema, std::move(dims), std::move(facts));
  ValidationReport report = CheckRollupFunctions(*store);
  if (!report.ok) {
    const Issue& issue = report.issues.front();
    throw OlapError(ErrorCode::kLoadError,
                    "roll-up functional dependency violated: " + issue.location + ": " + issue.message,
                    issue.location);
  }
  return store;
}

std::shared_ptr<const InstanceStore> LoadDataDir(const ConstellationSchema& schema,
                                                 const std::filesystem::path& dir) {
  DataFiles files;
  auto read = [&](const std::string& name) {
    std::filesystem::path path = dir / (name + ".csv");
    if (std::filesystem::exists(path)) files[name] = ReadFile(path);
  };
  for (const auto& d : schema.dims) read(d.name);
  for (const auto& f : schema.facts) read(f.name);
  return LoadData(schema, files);
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw OlapError(ErrorCode::kIoError, "cannot read '" + path.string() + "'", path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace constellation::ingest
