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

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "json.hpp"

#include "constellation/algebra.h"
#include "constellation/instance_store.h"
#include "constellation/mdql.h"

namespace constellation::service {

struct Response {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

struct Options {
  // Idle sessions older than this are discarded.
  std::chrono::seconds session_ttl{3600};
  // Base directory for relative paths in POST /schemas.
  std::filesystem::path data_root;
};

// Schema summary used by the pivot UI: the schema with `all` spelled out,
// plus member and row counts.
nlohmann::json SchemaSummary(const ConstellationSchema& schema, const InstanceStore* store);

// Current elements, display levels and restrictions of a context.
nlohmann::json ContextSummary(const AnalysisContext& ctx);

// {"code": "NotLinked", "message": ..., "location": ...}
nlohmann::json ErrorDocument(const OlapError& error);

// Transport-independent HTTP API. Thread-safe; operations on one session are
// serialized and a concurrent request to a busy session gets 409.
class Service {
 public:
  using Clock = std::function<std::chrono::steady_clock::time_point()>;

  explicit Service(Options options = {});

  // Registers a loaded store under its schema name; Conflict if taken.
  void AddSchema(std::shared_ptr<const InstanceStore> store);

  // Loads every "<name>.json" of `dir` with data from "<dir>/data"; without
  // JSON files, each subdirectory is tried instead. Returns the count loaded.
  size_t LoadDirectory(const std::filesystem::path& dir);

  Response Handle(std::string_view method, std::string_view target, std::string_view body);

  void set_clock(Clock clock) { clock_ = std::move(clock); }
  size_t session_count() const;

 private:
  struct SessionEntry {
    std::string id;
    std::string schema;
    std::chrono::system_clock::time_point created;
    std::chrono::steady_clock::time_point last_used;
    std::mutex mutex;
    mdql::Session session;

    SessionEntry(AnalysisContext initial) : session(std::move(initial)) {}
  };

  Response Route(std::string_view method, const std::vector<std::string>& path,
                 std::string_view body);
  Response PostSchema(std::string_view body);
  Response PostSession(std::string_view body);
  Response SessionRoute(std::string_view method, const std::string& id, const std::string& action,
                        std::string_view body);
  std::shared_ptr<SessionEntry> FindSession(const std::string& id);
  void ExpireSessions();
  std::string NewSessionId();

  Options options_;
  Clock clock_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<const InstanceStore>> schemas_;
  std::map<std::string, std::shared_ptr<SessionEntry>> sessions_;
  uint64_t next_session_ = 1;
};

}  // namespace constellation::service
