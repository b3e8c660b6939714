// Copyright 2026 The vcbridge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VCBRIDGE_SERVER_HTTP_API_H_
#define VCBRIDGE_SERVER_HTTP_API_H_

#include <string>
#include <string_view>
#include <thread>

#include <httplib.h>

#include "vcbridge/common/result.h"
#include "vcbridge/server/system.h"

namespace vcbridge {

struct HttpOptions {
  // Served under /ui when non-empty (the authentication and admin frontend).
  std::string static_dir;
};

// HTTP status for an error code of the JSON {error, error_description} body.
int HttpStatusFor(std::string_view error_code);

// Admin:    POST/GET /admin/clients, POST/GET /admin/templates,
//           GET /admin/templates/:id, POST /admin/tenants, POST /admin/login
// OIDC:     GET /authorize, POST /token, GET /.well-known/openid-configuration,
//           GET /.well-known/jwks.json
// Frontend: GET /auth/context, POST /auth/start, GET /auth/status/:sid
// Wallets:  GET /verify/request/:cid, POST /verify/present/:cid
// Internal: POST /internal/verification-result (service token bearer)
void RegisterRoutes(httplib::Server& server, System& system,
                    const HttpOptions& options = {});

// httplib server bound to a System, optionally on a background thread.
class HttpServer {
 public:
  explicit HttpServer(System& system, HttpOptions options = {});
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds (port 0 picks a free one) and serves on a background thread.
  // Returns the bound port, or -1.
  int Start(const std::string& host = "127.0.0.1", int port = 0);
  // Serves on the calling thread until Stop().
  bool Listen(const std::string& host, int port);
  void Stop();

  httplib::Server& server() { return server_; }

 private:
  httplib::Server server_;
  std::thread thread_;
};

}  // namespace vcbridge

#endif  // VCBRIDGE_SERVER_HTTP_API_H_
