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

#include "constellation/service.h"

#include <algorithm>
#include <ctime>
#include <iomanip>
#include <random>
#include <sstream>

#include "constellation/errors.h"
#include "constellation/ingest.h"
#include "constellation/ntable.h"
#include "constellation/sql_emitter.h"

namespace constellation::service {

using nlohmann::json;

namespace {

Response Json(int status, const json& doc) { return Response{status, doc.dump()}; }

Response Error(int status, const OlapError& error) { return Json(status, ErrorDocument(error)); }

Response NotFound(const std::string& what) {
  return Error(404, OlapError(ErrorCode::kNotFound, what + " not found"));
}

Response BadRequest(const std::string& message) {
  return Error(400, OlapError(ErrorCode::kBadRequest, message));
}

Response MethodNotAllowed(std::string_view method, std::string_view route) {
  return Error(405, OlapError(ErrorCode::kBadRequest, "method " + std::string(method) +
                                                          " not allowed on " + std::string(route)));
}

int StatusOf(const OlapError& error) {
  switch (CategoryOf(error.code())) {
    case ErrorCategory::kTransport:
      if (error.code() == ErrorCode::kNotFound) return 404;
      if (error.code() == ErrorCode::kConflict) return 409;
      return 400;
    default:
      return 422;
  }
}

std::vector<std::string> SplitPath(std::string_view target) {
  target = target.substr(0, target.find('?'));
  std::vector<std::string> parts;
  size_t start = 0;
  while (start < target.size()) {
    size_t end = target.find('/', start);
    if (end == std::string_view::npos) end = target.size();
    if (end > start) parts.emplace_back(target.substr(start, end - start));
    start = end + 1;
  }
  return parts;
}

std::string IsoTime(std::chrono::system_clock::time_point t) {
  std::time_t raw = std::chrono::system_clock::to_time_t(t);
  std::tm utc{};
  gmtime_r(&raw, &utc);
  std::ostringstream out;
  out << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

json ParseBody(std::string_view body) {
  if (body.empty()) return json::object();
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw OlapError(ErrorCode::kBadRequest, std::string("malformed JSON body: ") + e.what());
  }
}

json PredicateJson(const Predicate& p) {
  json lit;
  auto encode = [](const Literal& l) -> json {
    if (const double* d = std::get_if<double>(&l)) return *d;
    return std::get<std::string>(l);
  };
  if (p.op == Comparator::kIn) {
    lit = json::array();
    for (const auto& l : p.literals) lit.push_back(encode(l));
  } else {
    lit = encode(p.literals.front());
  }
  return {{"dim", p.dim}, {"param", p.param}, {"op", std::string(ComparatorSymbol(p.op))}, {"literal", lit}};
}

// A command from a request body: {"command": "ROLLUP ..."}, a structured
// command {"op": ...}, or the bare command text.
mdql::Command CommandFromBody(std::string_view body) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error&) {
    return mdql::Parse(body);
  }
  if (doc.is_string()) return mdql::Parse(doc.get<std::string>());
  if (doc.is_object() && doc.contains("command")) {
    if (!doc.at("command").is_string()) {
      throw OlapError(ErrorCode::kBadRequest, "'command' must be a string");
    }
    return mdql::Parse(doc.at("command").get<std::string>());
  }
  return mdql::DecodeCommand(doc);
}

}  // namespace

json ErrorDocument(const OlapError& error) {
  json doc = {{"code", std::string(error.code_name())}, {"message", error.what()}};
  if (!error.location().empty()) doc["location"] = error.location();
  return doc;
}

json SchemaSummary(const ConstellationSchema& schema, const InstanceStore* store) {
  json facts = json::array();
  for (const auto& f : schema.facts) {
    json measures = json::array();
    for (const auto& m : f.measures) {
      measures.push_back({{"name", m.name},
                          {"kind", std::string(MeasureKindName(m.kind))},
                          {"agg", std::string(AggFuncName(m.agg))}});
    }
    json fact = {{"name", f.name}, {"measures", std::move(measures)}, {"dimensions", schema.Linked(f.name)}};
    if (store != nullptr && store->HasFact(f.name)) fact["rows"] = store->fact(f.name).row_count;
    facts.push_back(std::move(fact));
  }
  json dims = json::array();
  for (const auto& d : schema.dims) {
    json hiers = json::array();
    for (const auto& h : d.hierarchies) hiers.push_back({{"name", h.name}, {"params", h.params}});
    json dim = {{"name", d.name}, {"key", d.key}, {"attributes", d.attributes}, {"hierarchies", std::move(hiers)}};
    if (store != nullptr && store->HasDimension(d.name)) dim["members"] = store->dimension(d.name).member_count;
    dims.push_back(std::move(dim));
  }
  return {{"name", schema.name}, {"facts", std::move(facts)}, {"dimensions", std::move(dims)}};
}

json ContextSummary(const AnalysisContext& ctx) {
  json doc = SchemaSummary(ctx.schema, ctx.store.get());
  CurrentElements current = GetCurrentElements(ctx.schema);
  doc["current"] = {{"fact", current.fact},
                    {"colDim", current.col_dim},
                    {"rowDim", current.row_dim},
                    {"colHier", current.col_hierarchy},
                    {"rowHier", current.row_hierarchy}};
  doc["displayLevels"] = ctx.display_levels;
  json restrictions = json::array();
  for (const auto& p : ctx.restrictions.predicates()) restrictions.push_back(PredicateJson(p));
  doc["restrictions"] = std::move(restrictions);
  return doc;
}

Service::Service(Options options)
    : options_(std::move(options)), clock_([] { return std::chrono::steady_clock::now(); }) {}

void Service::AddSchema(std::shared_ptr<const InstanceStore> store) {
  std::lock_guard lock(mutex_);
  const std::string& name = store->schema().name;
  if (schemas_.contains(name)) {
    throw OlapError(ErrorCode::kConflict, "schema '" + name + "' is already loaded");
  }
  schemas_.emplace(name, std::move(store));
}

size_t Service::LoadDirectory(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> documents;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") documents.push_back(entry.path());
  }
  std::sort(documents.begin(), documents.end());
  size_t loaded = 0;
  if (documents.empty()) {
    std::vector<std::filesystem::path> subdirs;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      if (entry.is_directory()) subdirs.push_back(entry.path());
    }
    std::sort(subdirs.begin(), subdirs.end());
    for (const auto& sub : subdirs) {
      bool has_schema = false;
      for (const auto& entry : std::filesystem::directory_iterator(sub)) {
        has_schema = has_schema || entry.path().extension() == ".json";
      }
      if (has_schema) loaded += LoadDirectory(sub);
    }
    return loaded;
  }
  for (const auto& path : documents) {
    ConstellationSchema schema = ingest::LoadSchemaFile(path);
    AddSchema(ingest::LoadDataDir(schema, dir / "data"));
    ++loaded;
  }
  return loaded;
}

size_t Service::session_count() const {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

Response Service::Handle(std::string_view method, std::string_view target, std::string_view body) {
  try {
    ExpireSessions();
    return Route(method, SplitPath(target), body);
  } catch (const OlapError& e) {
    return Error(StatusOf(e), e);
  } catch (const std::exception& e) {
    return Json(500, {{"code", "Internal"}, {"message", e.what()}});
  }
}

Response Service::Route(std::string_view method, const std::vector<std::string>& path,
                        std::string_view body) {
  if (path.empty()) return NotFound("route /");
  if (path[0] == "schemas") {
    if (path.size() == 1) {
      if (method == "POST") return PostSchema(body);
      if (method != "GET") return MethodNotAllowed(method, "/schemas");
      json list = json::array();
      std::lock_guard lock(mutex_);
      for (const auto& [name, store] : schemas_) {
        json facts = json::array();
        for (const auto& f : store->schema().facts) facts.push_back(f.name);
        json dims = json::array();
        for (const auto& d : store->schema().dims) dims.push_back(d.name);
        list.push_back({{"name", name}, {"facts", std::move(facts)}, {"dimensions", std::move(dims)}});
      }
      return Json(200, {{"schemas", std::move(list)}});
    }
    if (path.size() == 2) {
      if (method != "GET") return MethodNotAllowed(method, "/schemas/{name}");
      std::shared_ptr<const InstanceStore> store;
      {
        std::lock_guard lock(mutex_);
        auto it = schemas_.find(path[1]);
        if (it == schemas_.end()) return NotFound("schema '" + path[1] + "'");
        store = it->second;
      }
      return Json(200, SchemaSummary(store->schema(), store.get()));
    }
  }
  if (path[0] == "sessions") {
    if (path.size() == 1) {
      if (method != "POST") return MethodNotAllowed(method, "/sessions");
      return PostSession(body);
    }
    if (path.size() <= 3) return SessionRoute(method, path[1], path.size() == 3 ? path[2] : "", body);
  }
  std::string route;
  for (const auto& p : path) route += "/" + p;
  return NotFound("route " + route);
}

Response Service::PostSchema(std::string_view body) {
  json doc = ParseBody(body);
  if (!doc.is_object()) return BadRequest("expected a JSON object");
  std::shared_ptr<const InstanceStore> store;
  if (doc.contains("path")) {
    if (!doc.at("path").is_string()) return BadRequest("'path' must be a string");
    std::filesystem::path dir = doc.at("path").get<std::string>();
    if (dir.is_relative()) dir = options_.data_root / dir;
    std::vector<std::filesystem::path> documents;
    if (std::filesystem::is_directory(dir)) {
      for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() == ".json") documents.push_back(entry.path());
      }
    }
    if (documents.size() != 1) {
      return Error(422, OlapError(ErrorCode::kLoadError, "'" + dir.string() +
                                                             "' must hold exactly one schema document"));
    }
    ConstellationSchema schema = ingest::LoadSchemaFile(documents.front());
    store = ingest::LoadDataDir(schema, dir / "data");
  } else if (doc.contains("schema") && doc.contains("data")) {
    ConstellationSchema schema = ingest::LoadSchema(doc.at("schema"), "schema");
    const json& data = doc.at("data");
    if (!data.is_object()) return BadRequest("'data' must map names to CSV text");
    ingest::DataFiles files;
    for (const auto& [name, text] : data.items()) {
      if (!text.is_string()) return BadRequest("'data." + name + "' must be CSV text");
      files[name] = text.get<std::string>();
    }
    store = ingest::LoadData(schema, files);
  } else {
    return BadRequest("expected {\"path\": dir} or {\"schema\": doc, \"data\": {name: csv}}");
  }
  AddSchema(store);
  return Json(201, SchemaSummary(store->schema(), store.get()));
}

std::string Service::NewSessionId() {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << rng() << '-' << next_session_++;
  return out.str();
}

Response Service::PostSession(std::string_view body) {
  json doc = ParseBody(body);
  if (!doc.is_object() || !doc.contains("schema") || !doc.at("schema").is_string()) {
    return BadRequest("expected {\"schema\": name}");
  }
  const std::string name = doc.at("schema").get<std::string>();
  std::lock_guard lock(mutex_);
  auto it = schemas_.find(name);
  if (it == schemas_.end()) return NotFound("schema '" + name + "'");
  auto entry = std::make_shared<SessionEntry>(AnalysisContext::Initial(it->second));
  entry->id = NewSessionId();
  entry->schema = name;
  entry->created = std::chrono::system_clock::now();
  entry->last_used = clock_();
  sessions_.emplace(entry->id, entry);
  return Json(201, {{"id", entry->id}, {"schema", name}, {"created", IsoTime(entry->created)}});
}

std::shared_ptr<Service::SessionEntry> Service::FindSession(const std::string& id) {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return nullptr;
  it->second->last_used = clock_();
  return it->second;
}

void Service::ExpireSessions() {
  std::lock_guard lock(mutex_);
  const auto now = clock_();
  std::erase_if(sessions_, [&](const auto& item) {
    return now - item.second->last_used > options_.session_ttl;
  });
}

Response Service::SessionRoute(std::string_view method, const std::string& id,
                               const std::string& action, std::string_view body) {
  std::shared_ptr<SessionEntry> entry = FindSession(id);
  if (entry == nullptr) return NotFound("session '" + id + "'");
  if (action.empty()) {
    if (method != "DELETE") return MethodNotAllowed(method, "/sessions/{id}");
    std::unique_lock busy(entry->mutex, std::try_to_lock);
    if (!busy.owns_lock()) return Error(409, OlapError(ErrorCode::kConflict, "session is busy"));
    std::lock_guard lock(mutex_);
    sessions_.erase(id);
    return Json(200, {{"deleted", id}});
  }

  std::unique_lock busy(entry->mutex, std::try_to_lock);
  if (!busy.owns_lock()) {
    return Error(409, OlapError(ErrorCode::kConflict, "another operation is running on session '" + id + "'"));
  }
  mdql::Session& session = entry->session;

  if (action == "ntable") {
    if (method != "GET") return MethodNotAllowed(method, "/sessions/{id}/ntable");
    return Json(200, ntable::Encode(ntable::Build(session.current())));
  }
  if (action == "op" || action == "undo") {
    if (method != "POST") return MethodNotAllowed(method, "/sessions/{id}/" + action);
    mdql::Command cmd = action == "undo" ? mdql::Command{mdql::UndoCmd{}} : CommandFromBody(body);
    if (std::holds_alternative<mdql::ExportCmd>(cmd)) {
      throw OlapError(ErrorCode::kUnsupported, "EXPORT is not available over HTTP; GET /ntable instead");
    }
    // Apply to a copy so that a result which cannot be displayed is rejected
    // like any other failing operation.
    mdql::Session next = session;
    next.Apply(cmd);
    json doc = ntable::Encode(ntable::Build(next.current()));
    session = std::move(next);
    return Json(200, doc);
  }
  if (action == "sql") {
    if (method != "GET") return MethodNotAllowed(method, "/sessions/{id}/sql");
    return Json(200, {{"sql", sql::EmitQuery(session.current())}});
  }
  if (action == "history") {
    if (method != "GET") return MethodNotAllowed(method, "/sessions/{id}/history");
    json commands = json::array();
    for (const auto& h : session.history()) {
      commands.push_back({{"text", mdql::PrintCommand(h.command)}, {"command", mdql::EncodeCommand(h.command)}});
    }
    return Json(200, {{"commands", std::move(commands)}});
  }
  if (action == "schema") {
    if (method != "GET") return MethodNotAllowed(method, "/sessions/{id}/schema");
    return Json(200, ContextSummary(session.current()));
  }
  if (action == "splits") {
    if (method != "GET") return MethodNotAllowed(method, "/sessions/{id}/splits");
    json splits = json::array();
    const auto& results = session.splits();
    for (size_t i = 0; i < results.size(); ++i) {
      json item = {{"ref", "@" + std::to_string(i + 1)}};
      try {
        item["ntable"] = ntable::Encode(ntable::Build(results[i]));
      } catch (const OlapError& e) {
        item["error"] = ErrorDocument(e);
      }
      splits.push_back(std::move(item));
    }
    return Json(200, {{"splits", std::move(splits)}});
  }
  return NotFound("route /sessions/{id}/" + action);
}

}  // namespace constellation::service
