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

#include <memory>
#include <string>

#include "constellation/c_api.h"

namespace olapctl {

// HTTP/1.1 transport for an olap_service: every request is forwarded to
// olap_service_handle. Adds permissive CORS headers for the pivot UI.
class HttpFrontend {
 public:
  explicit HttpFrontend(olap_service* service);
  ~HttpFrontend();

  HttpFrontend(const HttpFrontend&) = delete;
  HttpFrontend& operator=(const HttpFrontend&) = delete;

  // Binds; port 0 picks a free port. Returns the bound port or -1.
  int Bind(const std::string& host, int port);
  // Blocks until Stop().
  bool Listen();
  void Stop();
  void WaitUntilReady();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace olapctl
