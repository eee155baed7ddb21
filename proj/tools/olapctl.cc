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

// olapctl: command-line front end of the constellation OLAP engine. Links the
// C API only.

#include <unistd.h>

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "constellation/c_api.h"
#include "http_frontend.h"

namespace fs = std::filesystem;

namespace {

enum ExitCode { kOk = 0, kLoadFailure = 1, kParseFailure = 2, kOperatorFailure = 3 };

int ExitFor(olap_status status) {
  switch (status) {
    case OLAP_OK: return kOk;
    case OLAP_ERR_PARSE: return kParseFailure;
    case OLAP_ERR_OPERATOR: return kOperatorFailure;
    default: return kLoadFailure;
  }
}

int ReportError(olap_status status, const std::string& prefix = {}) {
  std::cerr << "olapctl: " << prefix << olap_last_error_code() << ": " << olap_last_error_message()
            << "\n";
  return ExitFor(status);
}

// Owns a char* returned by the C API.
struct CString {
  char* ptr = nullptr;
  ~CString() { olap_string_free(ptr); }
  std::string str() const { return ptr == nullptr ? std::string() : std::string(ptr); }
};

struct Dataset {
  std::string schema;
  std::string data;
};

// With --schema, CSV files come from --data (default: "data" next to the
// schema). Without it, --data (or OLAP_DATA_DIR) names a dataset directory
// holding one schema document and a "data" subdirectory.
std::optional<Dataset> ResolveDataset(const std::string& schema, std::string data) {
  if (data.empty()) {
    if (const char* env = std::getenv("OLAP_DATA_DIR")) data = env;
  }
  if (!schema.empty()) {
    if (data.empty() || fs::exists(fs::path(data) / "data")) {
      fs::path base = data.empty() ? fs::path(schema).parent_path() : fs::path(data);
      return Dataset{schema, (base / "data").string()};
    }
    return Dataset{schema, data};
  }
  if (data.empty()) {
    std::cerr << "olapctl: no dataset; pass --schema/--data or set OLAP_DATA_DIR\n";
    return std::nullopt;
  }
  std::vector<fs::path> documents;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(data, ec)) {
    if (entry.path().extension() == ".json") documents.push_back(entry.path());
  }
  if (documents.size() != 1) {
    std::cerr << "olapctl: expected exactly one schema document in '" << data << "'\n";
    return std::nullopt;
  }
  return Dataset{documents.front().string(), (fs::path(data) / "data").string()};
}

struct Loaded {
  olap_catalog* catalog = nullptr;
  olap_session* session = nullptr;
  ~Loaded() {
    olap_session_free(session);
    olap_catalog_free(catalog);
  }
};

int Load(const Dataset& dataset, Loaded& loaded) {
  olap_status status = olap_catalog_load(dataset.schema.c_str(), dataset.data.c_str(), &loaded.catalog);
  if (status != OLAP_OK) return ReportError(status);
  status = olap_session_create(loaded.catalog, &loaded.session);
  if (status != OLAP_OK) return ReportError(status);
  return kOk;
}

std::optional<std::string> ReadText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Runs a script; SHOW output goes to stdout. Errors name the script line.
int RunScript(olap_session* session, const std::string& path, const std::string& text) {
  std::istringstream lines(text);
  std::string line;
  size_t number = 0;
  while (std::getline(lines, line)) {
    ++number;
    CString output;
    olap_status status = olap_session_execute(session, line.c_str(), number, &output.ptr);
    if (status == OLAP_ERR_PARSE) {
      std::cerr << path << ":" << olap_last_error_message() << "\n";
      return kParseFailure;
    }
    if (status != OLAP_OK) return ReportError(status, path + ":" + std::to_string(number) + ": ");
    if (output.ptr != nullptr) std::cout << output.str() << "\n";
  }
  return kOk;
}

int PrintState(olap_session* session, bool structured) {
  CString out;
  olap_status status = structured ? olap_session_ntable_json(session, &out.ptr)
                                  : olap_session_render_text(session, &out.ptr);
  if (status != OLAP_OK) return ReportError(status);
  std::cout << out.str() << "\n";
  return kOk;
}

bool IsStateChanging(const std::string& line) {
  std::istringstream in(line);
  std::string word;
  in >> word;
  for (auto& c : word) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return !word.empty() && word[0] != '#' && word != "SHOW" && word != "EXPORT";
}

int Repl(olap_session* session) {
  const bool interactive = isatty(STDIN_FILENO) != 0;
  std::string line;
  size_t number = 0;
  int last = kOk;
  while (true) {
    if (interactive) std::cout << "mdql> " << std::flush;
    if (!std::getline(std::cin, line)) break;
    ++number;
    CString output;
    olap_status status = olap_session_execute(session, line.c_str(), number, &output.ptr);
    if (status != OLAP_OK) {
      last = ReportError(status);
      continue;
    }
    if (output.ptr != nullptr) {
      std::cout << output.str() << "\n";
    } else if (IsStateChanging(line)) {
      CString text;
      if (olap_session_render_text(session, &text.ptr) == OLAP_OK) {
        std::cout << text.str() << "\n";
      } else {
        std::cout << "(not displayable: " << olap_last_error_code() << ": "
                  << olap_last_error_message() << ")\n";
      }
    }
    last = kOk;
  }
  return last;
}

olapctl::HttpFrontend* active_frontend = nullptr;

void StopServer(int) {
  if (active_frontend != nullptr) active_frontend->Stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constellation OLAP engine"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(olap_version()));

  std::string schema_path;
  std::string data_dir;
  std::string format = "text";
  auto add_dataset = [&](CLI::App* sub) {
    sub->add_option("--schema", schema_path, "Schema document (JSON)");
    sub->add_option("--data", data_dir, "CSV directory, or dataset directory without --schema")
        ->envname("OLAP_DATA_DIR");
  };

  auto* validate = app.add_subcommand("validate", "Validate a schema document");
  validate->add_option("schema", schema_path, "Schema document")->required();

  auto* load = app.add_subcommand("load", "Load a schema and its data files and summarize them");
  std::string load_dir;
  load->add_option("schema", schema_path, "Schema document")->required();
  load->add_option("datadir", load_dir, "Directory of CSV files")->required();

  auto* run = app.add_subcommand("run", "Run an MDQL script and print the final n-table");
  std::string script_path;
  run->add_option("script", script_path, "MDQL script")->required();
  add_dataset(run);
  run->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "structured"}));

  auto* repl = app.add_subcommand("repl", "Interactive MDQL session");
  add_dataset(repl);

  auto* sql = app.add_subcommand("sql", "Print the SQL of the analysis state (or the DDL)");
  std::string sql_script;
  bool ddl = false;
  add_dataset(sql);
  sql->add_option("--script", sql_script, "MDQL script applied first");
  sql->add_flag("--ddl", ddl, "Print CREATE TABLE statements instead");

  auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
  int port = 8080;
  std::string host = "127.0.0.1";
  long ttl = 3600;
  serve->add_option("--port", port, "TCP port")->check(CLI::Range(0, 65535));
  serve->add_option("--host", host, "Listen address");
  serve->add_option("--data", data_dir, "Directory of datasets")->envname("OLAP_DATA_DIR");
  serve->add_option("--session-ttl", ttl, "Idle session lifetime in seconds");

  CLI11_PARSE(app, argc, argv);

  if (*validate) {
    CString report;
    olap_status status = olap_validate_schema_file(schema_path.c_str(), &report.ptr);
    if (status != OLAP_OK) return ReportError(status);
    std::cout << report.str() << "\n";
    return kOk;
  }

  if (*load) {
    Loaded loaded;
    olap_status status = olap_catalog_load(schema_path.c_str(), load_dir.c_str(), &loaded.catalog);
    if (status != OLAP_OK) return ReportError(status);
    CString summary;
    status = olap_catalog_summary(loaded.catalog, &summary.ptr);
    if (status != OLAP_OK) return ReportError(status);
    std::cout << summary.str() << "\n";
    return kOk;
  }

  if (*serve) {
    if (data_dir.empty()) {
      std::cerr << "olapctl: serve needs --data or OLAP_DATA_DIR\n";
      return kLoadFailure;
    }
    olap_service* service = nullptr;
    olap_status status = olap_service_create(ttl, data_dir.c_str(), &service);
    if (status != OLAP_OK) return ReportError(status);
    size_t count = 0;
    status = olap_service_load_dir(service, data_dir.c_str(), &count);
    if (status != OLAP_OK) {
      olap_service_free(service);
      return ReportError(status);
    }
    int exit_code = kOk;
    {
      olapctl::HttpFrontend frontend(service);
      int bound = frontend.Bind(host, port);
      if (bound < 0) {
        std::cerr << "olapctl: cannot bind " << host << ":" << port << "\n";
        exit_code = kLoadFailure;
      } else {
        std::cerr << "serving " << count << " schema(s) on http://" << host << ":" << bound << "\n";
        active_frontend = &frontend;
        std::signal(SIGINT, StopServer);
        std::signal(SIGTERM, StopServer);
        frontend.Listen();
        active_frontend = nullptr;
      }
    }
    olap_service_free(service);
    return exit_code;
  }

  auto dataset = ResolveDataset(schema_path, data_dir);
  if (!dataset) return kLoadFailure;
  Loaded loaded;
  if (int rc = Load(*dataset, loaded); rc != kOk) return rc;

  if (*run) {
    auto text = ReadText(script_path);
    if (!text) {
      std::cerr << "olapctl: cannot read '" << script_path << "'\n";
      return kLoadFailure;
    }
    if (int rc = RunScript(loaded.session, script_path, *text); rc != kOk) return rc;
    return PrintState(loaded.session, format == "structured");
  }

  if (*repl) return Repl(loaded.session);

  if (*sql) {
    CString out;
    if (ddl) {
      olap_status status = olap_catalog_ddl(loaded.catalog, &out.ptr);
      if (status != OLAP_OK) return ReportError(status);
      std::cout << out.str();
      return kOk;
    }
    if (!sql_script.empty()) {
      auto text = ReadText(sql_script);
      if (!text) {
        std::cerr << "olapctl: cannot read '" << sql_script << "'\n";
        return kLoadFailure;
      }
      if (int rc = RunScript(loaded.session, sql_script, *text); rc != kOk) return rc;
    }
    olap_status status = olap_session_sql(loaded.session, &out.ptr);
    if (status != OLAP_OK) return ReportError(status);
    std::cout << out.str();
    return kOk;
  }
  return kOk;
}
