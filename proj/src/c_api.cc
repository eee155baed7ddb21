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

#include "constellation/c_api.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>

#include "constellation/errors.h"
#include "constellation/ingest.h"
#include "constellation/mdql.h"
#include "constellation/ntable.h"
#include "constellation/service.h"
#include "constellation/sql_emitter.h"

using namespace constellation;

struct olap_catalog {
  std::shared_ptr<const InstanceStore> store;
};

struct olap_session {
  explicit olap_session(AnalysisContext initial) : session(std::move(initial)) {}
  mdql::Session session;
};

struct olap_service {
  explicit olap_service(service::Options options) : impl(std::move(options)) {}
  service::Service impl;
};

namespace {

struct LastError {
  std::string code;
  std::string message;
  std::string location;
};

thread_local LastError last_error;

olap_status StatusOf(ErrorCode code) {
  switch (CategoryOf(code)) {
    case ErrorCategory::kLoad: return OLAP_ERR_LOAD;
    case ErrorCategory::kParse: return OLAP_ERR_PARSE;
    case ErrorCategory::kOperator: return OLAP_ERR_OPERATOR;
    case ErrorCategory::kTransport: return OLAP_ERR_ARGUMENT;
  }
  return OLAP_ERR_INTERNAL;
}

olap_status Record(const std::string& code, const std::string& message, const std::string& location,
                   olap_status status) {
  last_error = {code, message, location};
  return status;
}

// Runs `body`, translating exceptions into a status and the last error.
template <class F>
olap_status Guard(F&& body) {
  try {
    last_error = {};
    body();
    return OLAP_OK;
  } catch (const OlapError& e) {
    return Record(std::string(e.code_name()), e.what(), e.location(), StatusOf(e.code()));
  } catch (const std::bad_alloc&) {
    return Record("Internal", "out of memory", "", OLAP_ERR_INTERNAL);
  } catch (const std::exception& e) {
    return Record("Internal", e.what(), "", OLAP_ERR_INTERNAL);
  }
}

olap_status NullArgument(const char* name) {
  return Record("BadRequest", std::string(name) + " must not be null", "", OLAP_ERR_ARGUMENT);
}

char* Copy(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.data(), text.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* olap_version(void) { return "0.1.0"; }

const char* olap_last_error_code(void) { return last_error.code.c_str(); }
const char* olap_last_error_message(void) { return last_error.message.c_str(); }
const char* olap_last_error_location(void) { return last_error.location.c_str(); }

void olap_string_free(char* str) { std::free(str); }

olap_status olap_validate_schema_file(const char* schema_path, char** report_json) {
  if (schema_path == nullptr) return NullArgument("schema_path");
  if (report_json == nullptr) return NullArgument("report_json");
  return Guard([&] {
    ConstellationSchema schema = ingest::LoadSchemaFile(schema_path);
    ValidationReport report = ValidateSchema(schema);
    nlohmann::json issues = nlohmann::json::array();
    for (const auto& issue : report.issues) {
      issues.push_back({{"severity", issue.severity == Severity::kError ? "error" : "warning"},
                        {"location", issue.location},
                        {"message", issue.message}});
    }
    *report_json = Copy(nlohmann::json{{"ok", report.ok}, {"issues", issues}}.dump());
  });
}

olap_status olap_catalog_load(const char* schema_path, const char* data_dir, olap_catalog** out) {
  if (schema_path == nullptr) return NullArgument("schema_path");
  if (data_dir == nullptr) return NullArgument("data_dir");
  if (out == nullptr) return NullArgument("out");
  return Guard([&] {
    ConstellationSchema schema = ingest::LoadSchemaFile(schema_path);
    auto catalog = std::make_unique<olap_catalog>();
    catalog->store = ingest::LoadDataDir(schema, data_dir);
    *out = catalog.release();
  });
}

void olap_catalog_free(olap_catalog* catalog) { delete catalog; }

olap_status olap_catalog_summary(const olap_catalog* catalog, char** json) {
  if (catalog == nullptr) return NullArgument("catalog");
  if (json == nullptr) return NullArgument("json");
  return Guard([&] {
    *json = Copy(service::SchemaSummary(catalog->store->schema(), catalog->store.get()).dump());
  });
}

olap_status olap_catalog_ddl(const olap_catalog* catalog, char** sql) {
  if (catalog == nullptr) return NullArgument("catalog");
  if (sql == nullptr) return NullArgument("sql");
  return Guard([&] { *sql = Copy(sql::EmitDdl(catalog->store->schema(), catalog->store.get())); });
}

olap_status olap_session_create(const olap_catalog* catalog, olap_session** out) {
  if (catalog == nullptr) return NullArgument("catalog");
  if (out == nullptr) return NullArgument("out");
  return Guard([&] { *out = new olap_session(AnalysisContext::Initial(catalog->store)); });
}

void olap_session_free(olap_session* session) { delete session; }

olap_status olap_session_execute(olap_session* session, const char* text, size_t line,
                                 char** output) {
  if (session == nullptr) return NullArgument("session");
  if (text == nullptr) return NullArgument("text");
  if (output != nullptr) *output = nullptr;
  return Guard([&] {
    std::string_view row(text);
    size_t first = row.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos || row[first] == '#') return;
    mdql::Command cmd = mdql::Parse(row, line == 0 ? 1 : line);
    if (std::holds_alternative<mdql::ShowCmd>(cmd)) {
      std::string rendered = ntable::RenderText(ntable::Build(session->session.current()));
      if (output != nullptr) *output = Copy(rendered);
      return;
    }
    if (const auto* exp = std::get_if<mdql::ExportCmd>(&cmd)) {
      std::string doc = ntable::Encode(ntable::Build(session->session.current())).dump(2);
      std::ofstream file(exp->path, std::ios::binary);
      if (!file || !(file << doc << '\n')) {
        throw OlapError(ErrorCode::kIoError, "cannot write '" + exp->path + "'", exp->path);
      }
      return;
    }
    session->session.Apply(cmd);
  });
}

olap_status olap_session_run_script(olap_session* session, const char* script) {
  if (session == nullptr) return NullArgument("session");
  if (script == nullptr) return NullArgument("script");
  std::string_view text(script);
  size_t line = 1;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string row(text.substr(start, end - start));
    char* output = nullptr;
    olap_status status = olap_session_execute(session, row.c_str(), line, &output);
    olap_string_free(output);
    if (status != OLAP_OK) return status;
    start = end + 1;
    ++line;
  }
  return OLAP_OK;
}

olap_status olap_session_undo(olap_session* session) {
  if (session == nullptr) return NullArgument("session");
  return Guard([&] { session->session.Apply(mdql::UndoCmd{}); });
}

olap_status olap_session_render_text(const olap_session* session, char** text) {
  if (session == nullptr) return NullArgument("session");
  if (text == nullptr) return NullArgument("text");
  return Guard([&] { *text = Copy(ntable::RenderText(ntable::Build(session->session.current()))); });
}

olap_status olap_session_ntable_json(const olap_session* session, char** json) {
  if (session == nullptr) return NullArgument("session");
  if (json == nullptr) return NullArgument("json");
  return Guard([&] { *json = Copy(ntable::Encode(ntable::Build(session->session.current())).dump()); });
}

olap_status olap_session_sql(const olap_session* session, char** sql) {
  if (session == nullptr) return NullArgument("session");
  if (sql == nullptr) return NullArgument("sql");
  return Guard([&] { *sql = Copy(sql::EmitQuery(session->session.current())); });
}

olap_status olap_session_history(const olap_session* session, char** json) {
  if (session == nullptr) return NullArgument("session");
  if (json == nullptr) return NullArgument("json");
  return Guard([&] {
    nlohmann::json commands = nlohmann::json::array();
    for (const auto& h : session->session.history()) commands.push_back(mdql::PrintCommand(h.command));
    *json = Copy(commands.dump());
  });
}

olap_status olap_service_create(long ttl_seconds, const char* data_root, olap_service** out) {
  if (out == nullptr) return NullArgument("out");
  return Guard([&] {
    service::Options options;
    if (ttl_seconds > 0) options.session_ttl = std::chrono::seconds(ttl_seconds);
    if (data_root != nullptr) options.data_root = data_root;
    *out = new olap_service(std::move(options));
  });
}

void olap_service_free(olap_service* service) { delete service; }

olap_status olap_service_load_dir(olap_service* service, const char* dir, size_t* loaded) {
  if (service == nullptr) return NullArgument("service");
  if (dir == nullptr) return NullArgument("dir");
  return Guard([&] {
    size_t count = service->impl.LoadDirectory(dir);
    if (loaded != nullptr) *loaded = count;
  });
}

olap_status olap_service_handle(olap_service* service, const char* method, const char* target,
                                const char* body, size_t body_len, int* status, char** response) {
  if (service == nullptr) return NullArgument("service");
  if (method == nullptr) return NullArgument("method");
  if (target == nullptr) return NullArgument("target");
  if (status == nullptr) return NullArgument("status");
  if (response == nullptr) return NullArgument("response");
  return Guard([&] {
    std::string_view payload = body == nullptr ? std::string_view() : std::string_view(body, body_len);
    service::Response r = service->impl.Handle(method, target, payload);
    *status = r.status;
    *response = Copy(r.body);
  });
}

}  // extern "C"
