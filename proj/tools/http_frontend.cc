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

#include "http_frontend.h"

#include "httplib.h"

namespace olapctl {

struct HttpFrontend::Impl {
  olap_service* service;
  httplib::Server server;
};

namespace {

void Forward(olap_service* service, const httplib::Request& req, httplib::Response& res) {
  std::string target = req.path;
  if (!req.params.empty()) target += "?" + httplib::detail::params_to_query_str(req.params);
  int status = 500;
  char* body = nullptr;
  if (olap_service_handle(service, req.method.c_str(), target.c_str(), req.body.data(),
                          req.body.size(), &status, &body) != OLAP_OK) {
    std::string message;
    for (const char* c = olap_last_error_message(); *c != '\0'; ++c) {
      if (*c == '"' || *c == '\\') message.push_back('\\');
      if (static_cast<unsigned char>(*c) >= 0x20) message.push_back(*c);
    }
    res.status = 500;
    res.set_content("{\"code\":\"Internal\",\"message\":\"" + message + "\"}", "application/json");
    return;
  }
  res.status = status;
  res.set_content(body, "application/json");
  olap_string_free(body);
}

}  // namespace

HttpFrontend::HttpFrontend(olap_service* service) : impl_(std::make_unique<Impl>()) {
  impl_->service = service;
  auto& server = impl_->server;
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"}});
  auto handler = [service](const httplib::Request& req, httplib::Response& res) {
    Forward(service, req, res);
  };
  server.Get(".*", handler);
  server.Post(".*", handler);
  server.Delete(".*", handler);
  server.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
}

HttpFrontend::~HttpFrontend() { Stop(); }

int HttpFrontend::Bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpFrontend::Listen() { return impl_->server.listen_after_bind(); }

void HttpFrontend::Stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

void HttpFrontend::WaitUntilReady() { impl_->server.wait_until_ready(); }

}  // namespace olapctl
