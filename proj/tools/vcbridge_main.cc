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

// vcbridge: runs the bridge (serve) or a complete login in one process (demo).

#include <iostream>
#include <random>

#include <CLI11.hpp>
#include <httplib.h>
#include <json.hpp>

#include "vcbridge/common/clock.h"
#include "vcbridge/server/http_api.h"
#include "vcbridge/server/system.h"
#include "vcbridge/threats/testbed.h"
#include "vcbridge/wallet/wallet_sim.h"

namespace {

using nlohmann::json;

struct DemoSeed {
  std::unique_ptr<vcbridge::SimIssuer> issuer;
  vcbridge::SimWallet wallet{"demo-holder"};
  json summary;
};

// A tenant with a government_identity template, a confidential and a public
// client, and a trusted issuer whose credentials sit in an in-process wallet.
vcbridge::Result<std::unique_ptr<DemoSeed>> SeedDemo(vcbridge::System& sys,
                                                     const vcbridge::Clock& clock,
                                                     const std::string& redirect_uri) {
  auto seed = std::make_unique<DemoSeed>();
  seed->issuer = std::make_unique<vcbridge::SimIssuer>(vcbridge::kPidIssuer,
                                                       sys.issuers, true);
  for (vcbridge::Ecosystem e : vcbridge::kAllEcosystems) {
    vcbridge::IssueCredential(*seed->issuer, seed->wallet, e,
                              vcbridge::kPidCredentialType,
                              vcbridge::Testbed::PidAttributes(),
                              std::chrono::hours(24 * 365), clock);
  }
  std::string password = vcbridge::RandomToken(12);
  auto tenant = sys.iam.RegisterTenant("Demo", password);
  if (!tenant.ok()) return tenant.error();
  auto login = sys.iam.AdminLogin("Demo", password);
  if (!login.ok()) return login.error();
  auto tmpl = sys.templates.CreateTemplate(
      login->token,
      vcbridge::PidTemplateSpec("Demo PID", vcbridge::kGovernmentScope));
  if (!tmpl.ok()) return tmpl.error();
  vcbridge::ClientRegistration reg{vcbridge::ClientKind::kOidc,
                                   vcbridge::ClientType::kConfidential,
                                   {redirect_uri},
                                   {vcbridge::kGovernmentScope}};
  auto confidential = sys.iam.RegisterClient(login->token, reg);
  if (!confidential.ok()) return confidential.error();
  reg.client_type = vcbridge::ClientType::kPublic;
  auto public_client = sys.iam.RegisterClient(login->token, reg);
  if (!public_client.ok()) return public_client.error();
  seed->summary = {
      {"tenant", "Demo"},
      {"admin_password", password},
      {"scope", vcbridge::kGovernmentScope},
      {"redirect_uri", redirect_uri},
      {"confidential_client",
       {{"client_id", confidential->record.client_id.value()},
        {"client_secret", *confidential->client_secret}}},
      {"public_client", {{"client_id", public_client->record.client_id.value()}}}};
  return seed;
}

int Serve(const std::string& host, int port, std::string public_url,
          const std::string& static_dir, bool seed_demo,
          const std::string& demo_redirect) {
  vcbridge::SystemClock clock;
  vcbridge::System sys(clock);
  if (public_url.empty()) {
    public_url = "http://" + host + ":" + std::to_string(port);
  }
  sys.SetPublicUrl(public_url);
  vcbridge::HttpServer http(sys, vcbridge::HttpOptions{static_dir});

  std::unique_ptr<DemoSeed> seed;
  if (seed_demo) {
    auto seeded = SeedDemo(sys, clock, demo_redirect);
    if (!seeded.ok()) {
      std::cerr << "seed failed: " << seeded.error().code << "\n";
      return 1;
    }
    seed = std::move(*seeded);
    // Lets the frontend stand in for a wallet app during demos.
    http.server().Post(
        "/dev/wallet/present/:cid",
        [&](const httplib::Request& req, httplib::Response& res) {
          json body = json::parse(req.body.empty() ? "{}" : req.body, nullptr, false);
          auto tamper = vcbridge::ParseTamper(
              body.is_object() ? body.value("tamper", "none") : "none");
          auto reply = vcbridge::PresentOverHttp(
              seed->wallet, public_url, req.path_params.at("cid"),
              tamper.value_or(vcbridge::Tamper::kNone));
          if (!reply.ok()) {
            res.status = 400;
            res.set_content(json{{"error", reply.error().code},
                                 {"error_description", reply.error().description}}
                                .dump(),
                            "application/json");
            return;
          }
          res.set_content(reply->dump(), "application/json");
        });
    std::cout << seed->summary.dump(2) << std::endl;
  }
  std::cerr << "vcbridge listening on " << host << ":" << port << " as "
            << public_url << std::endl;
  return http.Listen(host, port) ? 0 : 1;
}

int Demo(const std::string& ecosystem_name) {
  auto ecosystem = vcbridge::ParseEcosystem(ecosystem_name);
  if (!ecosystem) {
    std::cerr << "unknown ecosystem " << ecosystem_name << "\n";
    return 2;
  }
  vcbridge::Testbed tb;
  auto claims = tb.Login(tb.tenant_a().confidential, *ecosystem);
  if (!claims.ok()) {
    std::cerr << claims.error().code << ": " << claims.error().description << "\n";
    return 1;
  }
  std::cout << claims->dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OIDC bridge for verifiable credentials"};
  app.require_subcommand(1);

  std::string host = "127.0.0.1";
  int port = 8080;
  std::string public_url;
  std::string static_dir;
  bool seed_demo = false;
  std::string demo_redirect = "http://127.0.0.1:8765/callback";
  auto* serve = app.add_subcommand("serve", "Run the bridge HTTP server");
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port)->capture_default_str();
  serve->add_option("--public-url", public_url, "Externally visible base URL");
  serve->add_option("--static-dir", static_dir, "Frontend files served under /ui");
  serve->add_flag("--seed-demo", seed_demo,
                  "Create a demo tenant, clients and wallet; prints credentials");
  serve->add_option("--demo-redirect-uri", demo_redirect)->capture_default_str();

  std::string ecosystem = "eudi";
  auto* demo = app.add_subcommand("demo", "Run one full login in-process");
  demo->add_option("--ecosystem", ecosystem, "aries, ebsi or eudi")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  if (*serve) {
    return Serve(host, port, public_url, static_dir, seed_demo, demo_redirect);
  }
  return Demo(ecosystem);
}
