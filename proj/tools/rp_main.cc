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

// rp: command-line relying party against a vcbridge issuer.

#include <chrono>
#include <condition_variable>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>
#include <httplib.h>

#include "vcbridge/common/clock.h"
#include "vcbridge/rp/relying_party.h"

namespace {

struct UriParts {
  std::string host;
  int port = 80;
  std::string path = "/";
};

std::optional<UriParts> ParseLoopback(const std::string& uri) {
  const std::string scheme = "http://";
  if (uri.rfind(scheme, 0) != 0) return std::nullopt;
  std::string rest = uri.substr(scheme.size());
  size_t slash = rest.find('/');
  std::string authority = rest.substr(0, slash);
  UriParts parts;
  if (slash != std::string::npos) parts.path = rest.substr(slash);
  size_t colon = authority.rfind(':');
  parts.host = authority.substr(0, colon);
  if (colon != std::string::npos) {
    parts.port = std::stoi(authority.substr(colon + 1));
  }
  return parts;
}

// Waits for one request on the redirect_uri and returns its query parameters.
std::optional<vcbridge::QueryParams> AwaitCallback(const UriParts& where,
                                                  std::chrono::seconds timeout) {
  httplib::Server server;
  std::mutex mu;
  std::condition_variable cv;
  std::optional<vcbridge::QueryParams> received;
  server.Get(where.path, [&](const httplib::Request& req, httplib::Response& res) {
    vcbridge::QueryParams params;
    for (const auto& [k, v] : req.params) params.emplace_back(k, v);
    {
      std::lock_guard lock(mu);
      received = std::move(params);
    }
    cv.notify_all();
    res.set_content("Login received; you can close this window.\n", "text/plain");
  });
  if (!server.bind_to_port(where.host, where.port)) {
    std::cerr << "cannot listen on " << where.host << ":" << where.port << "\n";
    return std::nullopt;
  }
  std::thread thread([&] { server.listen_after_bind(); });
  {
    std::unique_lock lock(mu);
    cv.wait_for(lock, timeout, [&] { return received.has_value(); });
  }
  server.stop();
  thread.join();
  return received;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OpenID Connect relying party for vcbridge"};
  app.require_subcommand(1);
  auto* login = app.add_subcommand("login", "Log in and print the ID Token claims");

  vcbridge::rp::RpConfig config;
  config.redirect_uri = "http://127.0.0.1:8765/callback";
  std::string secret;
  std::vector<std::string> scopes;
  bool from_stdin = false;
  int timeout_s = 300;
  login->add_option("--issuer", config.issuer_url, "Issuer URL")->required();
  login->add_option("--client-id", config.client_id, "Client id")->required();
  login->add_option("--client-secret", secret, "Client secret (confidential clients)");
  login->add_option("--scopes", scopes, "Scopes besides openid")
      ->delimiter(',')
      ->required();
  login->add_option("--redirect-uri", config.redirect_uri,
                    "Loopback redirect URI")
      ->capture_default_str();
  login->add_flag("--callback-stdin", from_stdin,
                  "Read the callback URL from stdin instead of listening");
  login->add_option("--timeout", timeout_s, "Seconds to wait for the callback")
      ->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  if (!secret.empty()) config.client_secret = secret;
  config.scopes = {"openid"};
  for (const auto& s : scopes) {
    if (s != "openid") config.scopes.push_back(s);
  }

  vcbridge::SystemClock clock;
  vcbridge::rp::RelyingParty rp(config, clock);
  auto start = rp.BeginLogin();
  if (!start.ok()) {
    std::cerr << start.error().code << ": " << start.error().description << "\n";
    return 1;
  }
  std::cerr << "Open in a browser:\n" << start->authorize_url << "\n";

  std::optional<vcbridge::QueryParams> callback;
  if (from_stdin) {
    std::string line;
    std::getline(std::cin, line);
    size_t q = line.find('?');
    callback = vcbridge::ParseQuery(q == std::string::npos ? line : line.substr(q + 1));
  } else {
    auto where = ParseLoopback(config.redirect_uri);
    if (!where) {
      std::cerr << "redirect URI must be http:// on loopback\n";
      return 2;
    }
    callback = AwaitCallback(*where, std::chrono::seconds(timeout_s));
  }
  if (!callback) {
    std::cerr << "no callback received\n";
    return 1;
  }
  auto claims = rp.FinishLogin(*callback, start->pending);
  if (!claims.ok()) {
    std::cerr << claims.error().code << ": " << claims.error().description << "\n";
    return 1;
  }
  std::cout << claims->dump(2) << "\n";
  return 0;
}
