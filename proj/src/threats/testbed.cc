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

#include "vcbridge/threats/testbed.h"

#include <stdexcept>

namespace vcbridge {
namespace {

using nlohmann::json;

constexpr char kAdminPassword[] = "correct horse battery staple";

template <typename T>
T OrThrow(Result<T> r, const char* what) {
  if (!r.ok()) {
    throw std::runtime_error(std::string(what) + ": " + r.error().code + " " +
                             r.error().description);
  }
  return std::move(*r);
}

Error ErrorFromReply(const httplib::Result& res, std::string_view step) {
  if (!res) return MakeError(errc::kInternalError, std::string(step) + " failed");
  json body = json::parse(res->body, nullptr, false);
  if (body.is_object() && body.contains("error")) {
    return MakeError(body.value("error", ""), body.value("error_description", ""));
  }
  return MakeError(errc::kInternalError,
                   std::string(step) + " returned " + std::to_string(res->status));
}

QueryParams QueryOfUrl(const std::string& url) {
  size_t q = url.find('?');
  if (q == std::string::npos) return {};
  return ParseQuery(std::string_view(url).substr(q + 1)).value_or(QueryParams{});
}

}  // namespace

TemplateSpec PidTemplateSpec(const std::string& name, const std::string& scope) {
  TemplateSpec spec;
  spec.name = name;
  spec.scopes = {scope};
  spec.subject_claim = "personal_identifier";
  spec.claim_mappings = {{"document_number", "document_number", true},
                         {"given_name", "given_name", true},
                         {"family_name", "family_name", true},
                         {"birth_date", "birthdate", false}};
  for (Ecosystem e : kAllEcosystems) {
    EcosystemConfig config;
    config.ecosystem = e;
    config.requested_attributes = {"personal_identifier", "document_number",
                                   "given_name", "family_name", "birth_date"};
    config.trusted_issuers = {kPidIssuer};
    config.credential_type = kPidCredentialType;
    spec.ecosystem_configs.emplace(e, config);
  }
  return spec;
}

AttributeMap Testbed::PidAttributes() {
  return {{"personal_identifier", "PID-DE-1234567"},
          {"document_number", "X123"},
          {"given_name", "Erika"},
          {"family_name", "Mustermann"},
          {"birth_date", "1964-08-12"},
          {"nationality", "DE"}};
}

Testbed::Testbed(TestbedOptions options) {
  SystemOptions system_options;
  system_options.iam.password_hashing = options.password_hashing;
  system_ = std::make_unique<System>(clock_, system_options);
  system_->SetFaultInjection(options.faults);

  http_ = std::make_unique<HttpServer>(*system_);
  int port = http_->Start("127.0.0.1", 0);
  if (port <= 0) throw std::runtime_error("testbed: cannot bind loopback port");
  base_url_ = "http://127.0.0.1:" + std::to_string(port);
  system_->SetPublicUrl(base_url_);

  issuer_ = std::make_unique<SimIssuer>(kPidIssuer, system_->issuers, true);
  for (Ecosystem e : kAllEcosystems) {
    IssueCredential(*issuer_, wallet_, e, kPidCredentialType, PidAttributes(),
                    std::chrono::hours(24 * 365), clock_);
  }
  tenant_a_ = MakeTenant("Tenant A", kGovernmentScope, "https://rp-a.example/cb");
  tenant_b_ = MakeTenant("Tenant B", kKycScope, "https://rp-b.example/cb");
}

Testbed::~Testbed() {
  if (http_) http_->Stop();
}

Testbed::TenantFixture Testbed::MakeTenant(const std::string& name,
                                           const std::string& scope,
                                           const std::string& redirect_uri) {
  TenantFixture f;
  f.tenant = OrThrow(system_->iam.RegisterTenant(name, kAdminPassword), "tenant");
  f.admin_token =
      OrThrow(system_->iam.AdminLogin(name, kAdminPassword), "login").token;
  f.tmpl = OrThrow(system_->templates.CreateTemplate(
                       f.admin_token, PidTemplateSpec(name + " PID", scope)),
                   "template");
  ClientRegistration reg{ClientKind::kOidc, ClientType::kConfidential,
                         {redirect_uri}, {scope}};
  f.confidential =
      OrThrow(system_->iam.RegisterClient(f.admin_token, reg), "client");
  reg.client_type = ClientType::kPublic;
  f.public_client =
      OrThrow(system_->iam.RegisterClient(f.admin_token, reg), "public client");
  return f;
}

rp::RpConfig Testbed::RpConfigFor(const RegisteredClient& client,
                                  std::string scope) const {
  rp::RpConfig config;
  config.issuer_url = base_url_;
  config.client_id = client.record.client_id.value();
  config.client_secret = client.client_secret;
  config.redirect_uri = client.record.redirect_uris.at(0);
  config.scopes = {"openid", std::move(scope)};
  return config;
}

Result<Testbed::UserAgentRun> Testbed::RunUserAgent(
    const std::string& authorize_url, Ecosystem ecosystem, Tamper tamper) {
  if (authorize_url.rfind(base_url_, 0) != 0) {
    return MakeError(errc::kInvalidRequest, "authorize URL is not this bridge");
  }
  httplib::Client http(base_url_);
  auto authorized = http.Get(authorize_url.substr(base_url_.size()));
  if (!authorized || authorized->status != 302) {
    return ErrorFromReply(authorized, "authorize");
  }
  UserAgentRun run;
  std::string location = authorized->get_header_value("Location");
  if (location.rfind(system_->bridge.options().auth_ui_url, 0) != 0) {
    run.callback = QueryOfUrl(location);  // error redirect straight to the RP
    return run;
  }
  std::string auth_token =
      FindParam(QueryOfUrl(location), "auth_token").value_or("");
  std::string set_cookie = authorized->get_header_value("Set-Cookie");
  run.cookie = set_cookie.substr(0, set_cookie.find(';'));

  auto context = http.Get("/auth/context?auth_token=" + UrlEncode(auth_token));
  if (!context || context->status != 200) {
    return ErrorFromReply(context, "auth context");
  }
  json ctx = json::parse(context->body);
  run.session_id = ctx.at("session_id").get<std::string>();
  run.correlation_id = ctx.at("correlation_id").get<std::string>();
  std::string client_id = ctx.at("client_id").get<std::string>();

  json start = {{"auth_token", auth_token}, {"ecosystem", ToString(ecosystem)}};
  auto started = http.Post("/auth/start", start.dump(), "application/json");
  if (!started || started->status != 200) {
    return ErrorFromReply(started, "auth start");
  }

  auto reply = PresentOverHttp(wallet_, base_url_, run.correlation_id, tamper);
  if (!reply.ok()) return reply.error();
  run.presentation_reply = *reply;

  auto polled = http.Get(
      "/auth/status/" + run.session_id + "?client_id=" + UrlEncode(client_id),
      httplib::Headers{{"Cookie", run.cookie}});
  if (!polled || polled->status != 200) return ErrorFromReply(polled, "status");
  json status = json::parse(polled->body);
  if (status.value("status", "") != "verified") {
    return MakeError(status.value("failure_reason", "verification_failed"),
                     "session " + status.value("status", "?"));
  }
  run.callback = {{"code", status.at("code").get<std::string>()},
                  {"state", status.at("state").get<std::string>()}};
  return run;
}

Result<json> Testbed::Login(const RegisteredClient& client, Ecosystem ecosystem) {
  rp::RelyingParty rp(RpConfigFor(client), clock_);
  auto start = rp.BeginLogin();
  if (!start.ok()) return start.error();
  auto run = RunUserAgent(start->authorize_url, ecosystem);
  if (!run.ok()) return run.error();
  return rp.FinishLogin(run->callback, start->pending);
}

}  // namespace vcbridge
