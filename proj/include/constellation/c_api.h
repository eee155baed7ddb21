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

/* C interface of the constellation OLAP engine.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Functions return an olap_status; on failure the thread-local last error
 * (machine code such as "NotLinked", message, optional location) describes
 * the problem. Strings returned through char** out-parameters are owned by
 * the caller and released with olap_string_free.
 */
#ifndef CONSTELLATION_C_API_H_
#define CONSTELLATION_C_API_H_

#include <stddef.h>

#if defined(OLAP_BUILDING_LIBRARY)
#define OLAP_API __attribute__((visibility("default")))
#else
#define OLAP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum olap_status {
  OLAP_OK = 0,
  OLAP_ERR_LOAD = 1,     /* schema or data file rejected */
  OLAP_ERR_PARSE = 2,    /* MDQL syntax error */
  OLAP_ERR_OPERATOR = 3, /* algebra precondition failed */
  OLAP_ERR_ARGUMENT = 4, /* null handle, bad request */
  OLAP_ERR_INTERNAL = 5
} olap_status;

typedef struct olap_catalog olap_catalog;
typedef struct olap_session olap_session;
typedef struct olap_service olap_service;

OLAP_API const char* olap_version(void);

OLAP_API const char* olap_last_error_code(void);
OLAP_API const char* olap_last_error_message(void);
OLAP_API const char* olap_last_error_location(void);

OLAP_API void olap_string_free(char* str);

/* Validation report {"ok": bool, "issues": [{severity, location, message}]}
 * of a schema document. OLAP_ERR_LOAD when the document is rejected. */
OLAP_API olap_status olap_validate_schema_file(const char* schema_path, char** report_json);

/* Schema document plus one "<name>.csv" per dimension and fact in data_dir. */
OLAP_API olap_status olap_catalog_load(const char* schema_path, const char* data_dir,
                                       olap_catalog** out);
OLAP_API void olap_catalog_free(olap_catalog* catalog);
OLAP_API olap_status olap_catalog_summary(const olap_catalog* catalog, char** json);
OLAP_API olap_status olap_catalog_ddl(const olap_catalog* catalog, char** sql);

OLAP_API olap_status olap_session_create(const olap_catalog* catalog, olap_session** out);
OLAP_API void olap_session_free(olap_session* session);

/* Runs one MDQL line (blank lines and comments are no-ops). SHOW stores the
 * rendered n-table in *output, EXPORT writes the interchange document to its
 * path; *output is NULL otherwise. `line` numbers parse error locations. */
OLAP_API olap_status olap_session_execute(olap_session* session, const char* text, size_t line,
                                          char** output);
/* Executes a script line by line and stops at the first error. */
OLAP_API olap_status olap_session_run_script(olap_session* session, const char* script);
OLAP_API olap_status olap_session_undo(olap_session* session);

OLAP_API olap_status olap_session_render_text(const olap_session* session, char** text);
OLAP_API olap_status olap_session_ntable_json(const olap_session* session, char** json);
OLAP_API olap_status olap_session_sql(const olap_session* session, char** sql);
OLAP_API olap_status olap_session_history(const olap_session* session, char** json);

/* HTTP API without the transport. ttl_seconds <= 0 selects the default;
 * data_root resolves relative paths in POST /schemas and may be NULL. */
OLAP_API olap_status olap_service_create(long ttl_seconds, const char* data_root,
                                         olap_service** out);
OLAP_API void olap_service_free(olap_service* service);
/* Loads every schema found under dir; *loaded receives the count. */
OLAP_API olap_status olap_service_load_dir(olap_service* service, const char* dir, size_t* loaded);
/* Always OLAP_OK for well-formed arguments; failures are HTTP statuses. */
OLAP_API olap_status olap_service_handle(olap_service* service, const char* method,
                                         const char* target, const char* body, size_t body_len,
                                         int* status, char** response);

#ifdef __cplusplus
}
#endif

#endif /* CONSTELLATION_C_API_H_ */
