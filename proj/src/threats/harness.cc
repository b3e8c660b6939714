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

#include "vcbridge/threats/harness.h"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "vcbridge/common/crypto.h"
#include "vcbridge/common/encoding.h"
#include "vcbridge/threats/testbed.h"

namespace vcbridge {
namespace {

using nlohmann::json;

// Setup steps that must work for the attack to be meaningful.
struct SetupFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename T>
T Must(Result<T> r, const char* step) {
  if (!r.ok()) {
    throw SetupFailure(std::string(step) + ": " + r.error().code + " " +
                       r.error().description);
  }
  return std::move(*r);
}

// nullopt: the attack went through.
using Attack = std::function<std::optional<Error>(Testbed&, std::string&)>;

struct Probe {
  std::string control;
  std::string description;
  std::string expected_error;
  std::string expected_description;  // substring; empty matches anything
  Attack attack;
};

struct Reply {
  int status = 0;
  json body;
  httplib::Headers headers;
};

Reply Send(const httplib::Result& res) {
  if (!res) throw SetupFailure("HTTP request failed");
  Reply r{res->status, json::parse(res->body, nullptr, false), res->headers};
  return r;
}

std::optional<Error> ErrorOf(const Reply& reply) {
  if (reply.status >= 200 && reply.status < 300) return std::nullopt;
  if (!reply.body.is_object()) {
    return MakeError("http_" + std::to_string(reply.status));
  }
  return MakeError(reply.body.value("error", "unknown"),
                   reply.body.value("error_description", ""));
}

std::string Header(const Reply& reply, const std::string& name) {
  auto it = reply.headers.find(name);
  return it == reply.headers.end() ? "" : it->second;
}

// A relying-party login driven up to the callback.
struct Flow {
  std::unique_ptr<rp::RelyingParty> rp;
  rp::LoginStart start;
  Testbed::UserAgentRun run;
};

Flow CompleteFlow(Testbed& tb, const RegisteredClient& client) {
  Flow f;
  f.rp = std::make_unique<rp::RelyingParty>(tb.RpConfigFor(client), tb.clock());
  f.start = Must(f.rp->BeginLogin(), "begin login");
  f.run = Must(tb.RunUserAgent(f.start.authorize_url), "user agent");
  return f;
}

// A browser that followed /authorize but has not verified yet.
struct BrowserSession {
  std::string session_id;
  std::string set_cookie;
  std::string auth_token;
};

BrowserSession OpenSession(Testbed& tb, const RegisteredClient& client) {
  rp::RelyingParty rp(tb.RpConfigFor(client), tb.clock());
  auto start = Must(rp.BeginLogin(), "begin login");
  httplib::Client http(tb.base_url());
  Reply r = Send(http.Get(start.authorize_url.substr(tb.base_url().size())));
  if (r.status != 302) throw SetupFailure("authorize did not redirect");
  std::string location = Header(r, "Location");
  auto query = ParseQuery(location.substr(location.find('?') + 1));
  BrowserSession s;
  s.set_cookie = Header(r, "Set-Cookie");
  std::string pair = s.set_cookie.substr(0, s.set_cookie.find(';'));
  s.session_id = pair.substr(pair.find('=') + 1);
  s.auth_token = FindParam(query.value_or(QueryParams{}), "auth_token").value_or("");
  return s;
}

PresentationRequest StartVerification(Testbed& tb, const BrowserSession& s) {
  httplib::Client http(tb.base_url());
  json body = {{"auth_token", s.auth_token}, {"ecosystem", "eudi"}};
  Reply r = Send(http.Post("/auth/start", body.dump(), "application/json"));
  if (r.status != 200) throw SetupFailure("auth start failed");
  return r.body.at("request").get<PresentationRequest>();
}

Reply Present(Testbed& tb, const std::string& cid, const Presentation& p) {
  httplib::Client http(tb.base_url());
  return Send(http.Post("/verify/present/" + cid, json(p).dump(),
                        "application/json"));
}

Reply PollStatus(Testbed& tb, const std::string& sid, const ClientId& client,
                 const std::string& cookie) {
  httplib::Client http(tb.base_url());
  httplib::Headers headers;
  if (!cookie.empty()) headers.emplace("Cookie", cookie);
  return Send(http.Get(
      "/auth/status/" + sid + "?client_id=" + UrlEncode(client.value()), headers));
}

Reply PostToken(Testbed& tb, QueryParams form,
                const std::optional<std::pair<std::string, std::string>>& basic) {
  httplib::Client http(tb.base_url());
  httplib::Headers headers;
  if (basic) {
    headers.emplace("Authorization",
                    "Basic " + Base64Encode(UrlEncode(basic->first) + ":" +
                                            UrlEncode(basic->second)));
  }
  return Send(http.Post("/token", headers, BuildQuery(form),
                        "application/x-www-form-urlencoded"));
}

QueryParams CodeForm(const Flow& f, const RegisteredClient& client,
                     const std::string& verifier) {
  return {{"grant_type", "authorization_code"},
          {"code", FindParam(f.run.callback, "code").value_or("")},
          {"redirect_uri", client.record.redirect_uris.at(0)},
          {"code_verifier", verifier}};
}

std::optional<std::pair<std::string, std::string>> BasicFor(
    const RegisteredClient& client) {
  if (!client.client_secret) return std::nullopt;
  return std::pair{client.record.client_id.value(), *client.client_secret};
}

// Honest login up to the token response; returns {id_token, nonce}.
std::pair<std::string, std::string> ObtainIdToken(Testbed& tb,
                                                  const RegisteredClient& client) {
  Flow f = CompleteFlow(tb, client);
  Reply r = PostToken(tb, CodeForm(f, client, f.start.pending.code_verifier),
                      BasicFor(client));
  if (r.status != 200) throw SetupFailure("honest token exchange failed");
  return {r.body.at("id_token").get<std::string>(), f.start.pending.nonce};
}

rp::RelyingParty DiscoveredRp(Testbed& tb, const RegisteredClient& client) {
  rp::RelyingParty rp(tb.RpConfigFor(client), tb.clock());
  Status s = rp.Discover();
  if (!s.ok()) throw SetupFailure("discovery failed");
  return rp;
}

std::optional<Error> ErrorOfResult(const Result<json>& r) {
  if (r.ok()) return std::nullopt;
  return r.error();
}

// --- AT.1 ------------------------------------------------------------------

std::vector<Probe> AuthCodeInterception() {
  return {{"IS.1", "intercepted code redeemed with the attacker's own verifier",
           std::string(errc::kInvalidGrant), "PKCE",
           [](Testbed& tb, std::string& detail) {
             const auto& victim = tb.tenant_a().public_client;
             Flow f = CompleteFlow(tb, victim);
             QueryParams form = CodeForm(f, victim, RandomToken(32));
             form.emplace_back("client_id", victim.record.client_id.value());
             Reply r = PostToken(tb, form, std::nullopt);
             if (r.status == 200) detail = "attacker received an ID Token";
             return ErrorOf(r);
           }}};
}

// --- AT.2 ------------------------------------------------------------------

std::vector<Probe> Csrf() {
  return {{"IS.2", "attacker's callback (code + state) injected into the "
                   "victim's login",
           std::string(errc::kCsrfDetected), "",
           [](Testbed& tb, std::string& detail) {
             const auto& client = tb.tenant_a().confidential;
             rp::RelyingParty victim(tb.RpConfigFor(client), tb.clock());
             auto victim_start = Must(victim.BeginLogin(), "victim login");
             Flow attacker = CompleteFlow(tb, client);
             auto r = victim.FinishLogin(attacker.run.callback,
                                         victim_start.pending);
             if (r.ok()) detail = "victim logged in as the attacker";
             return ErrorOfResult(r);
           }},
          {"IS.8", "authorize with a look-alike redirect_uri",
           std::string(errc::kInvalidRequest), "redirect_uri",
           [](Testbed& tb, std::string& detail) -> std::optional<Error> {
             auto config = tb.RpConfigFor(tb.tenant_a().confidential);
             config.redirect_uri += "/";
             rp::RelyingParty rp(config, tb.clock());
             auto start = Must(rp.BeginLogin(), "begin login");
             httplib::Client http(tb.base_url());
             Reply r = Send(
                 http.Get(start.authorize_url.substr(tb.base_url().size())));
             if (r.status == 302) {
               detail = "redirected to " + Header(r, "Location");
               return std::nullopt;
             }
             return ErrorOf(r);
           }}};
}

// --- AT.3 ------------------------------------------------------------------

std::vector<Probe> TokenReplay() {
  return {{"IS.2", "ID Token from one login replayed into another session",
           std::string(errc::kTokenInvalid), "nonce",
           [](Testbed& tb, std::string& detail) {
             const auto& client = tb.tenant_a().confidential;
             auto [token, nonce] = ObtainIdToken(tb, client);
             rp::RelyingParty victim = DiscoveredRp(tb, client);
             auto victim_start = Must(victim.BeginLogin(), "victim login");
             auto r = victim.ValidateIdToken(token, victim_start.pending.nonce,
                                             tb.system().bridge.Jwks());
             if (r.ok()) detail = "replayed token accepted";
             return ErrorOfResult(r);
           }}};
}

// --- AT.4 ------------------------------------------------------------------

std::vector<Probe> SessionHijacking() {
  return {{"IS.5", "poll a victim's session from another browser",
           std::string(errc::kSessionNotFound), "cookie",
           [](Testbed& tb, std::string& detail) -> std::optional<Error> {
             const auto& client = tb.tenant_a().confidential;
             BrowserSession victim = OpenSession(tb, client);
             for (const char* flag : {"HttpOnly", "Secure", "SameSite="}) {
               if (victim.set_cookie.find(flag) == std::string::npos) {
                 detail = std::string("session cookie lacks ") + flag;
                 return std::nullopt;
               }
             }
             BrowserSession attacker = OpenSession(tb, client);
             std::string attacker_cookie =
                 attacker.set_cookie.substr(0, attacker.set_cookie.find(';'));
             for (const std::string& cookie : {attacker_cookie, std::string()}) {
               Reply r = PollStatus(tb, victim.session_id,
                                    client.record.client_id, cookie);
               if (r.status == 200) {
                 detail = "victim session readable";
                 return std::nullopt;
               }
               if (!cookie.empty()) continue;
               return ErrorOf(r);
             }
             return std::nullopt;
           }},
          {"IS.5", "guess a session id (and forge a matching cookie)",
           std::string(errc::kSessionNotFound), "",
           [](Testbed& tb, std::string& detail) {
             const auto& client = tb.tenant_a().confidential;
             OpenSession(tb, client);
             std::string guess = NewUuidV4();
             Reply r = PollStatus(tb, guess, client.record.client_id,
                                  std::string(kSessionCookieName) + "=" + guess);
             if (r.status == 200) detail = "guessed session exists";
             return ErrorOf(r);
           }},
          {"IS.9", "reuse a session after its 30 minute lifetime",
           std::string(errc::kSessionNotFound), "",
           [](Testbed& tb, std::string& detail) {
             const auto& client = tb.tenant_a().confidential;
             BrowserSession victim = OpenSession(tb, client);
             tb.clock().Advance(std::chrono::minutes(30));
             Reply r = PollStatus(
                 tb, victim.session_id, client.record.client_id,
                 victim.set_cookie.substr(0, victim.set_cookie.find(';')));
             if (r.status == 200) detail = "expired session still served";
             return ErrorOf(r);
           }}};
}

// --- AT.5 ------------------------------------------------------------------

std::string WithTemplateId(const std::string& token, const std::string& id) {
  size_t a = token.find('.');
  size_t b = token.find('.', a + 1);
  json payload = json::parse(
      Base64UrlDecode(std::string_view(token).substr(a + 1, b - a - 1)).value());
  payload["template_id"] = id;
  return token.substr(0, a + 1) + Base64UrlEncode(payload.dump()) +
         token.substr(b);
}

std::vector<Probe> RequestManipulation() {
  return {{"IS.4", "auth token re-pointed at another template",
           std::string(errc::kInvalidAuthToken), "signature",
           [](Testbed& tb, std::string& detail) {
             BrowserSession s = OpenSession(tb, tb.tenant_a().confidential);
             std::string forged = WithTemplateId(
                 s.auth_token, tb.tenant_b().tmpl.template_id.value());
             httplib::Client http(tb.base_url());
             json body = {{"auth_token", forged}, {"ecosystem", "eudi"}};
             Reply r = Send(
                 http.Post("/auth/start", body.dump(), "application/json"));
             if (r.status == 200) detail = "forged template accepted";
             return ErrorOf(r);
           }},
          {"IS.4", "wallet answers a client-side rewritten request with a "
                   "weaker credential",
           std::string(ToString(FailureReason::kMissingAttribute)), "",
           [](Testbed& tb, std::string& detail) -> std::optional<Error> {
             BrowserSession s = OpenSession(tb, tb.tenant_a().confidential);
             PresentationRequest request = StartVerification(tb, s);
             SimWallet attacker("attacker");
             IssueCredential(tb.issuer(), attacker, Ecosystem::kEudi,
                             "eu.europa.ec.eudi.age.1",
                             {{"personal_identifier", "PID-XX-0000000"},
                              {"age_over_18", "true"}},
                             std::chrono::hours(24), tb.clock());
             PresentationRequest rewritten = request;
             rewritten.credential_type = "eu.europa.ec.eudi.age.1";
             rewritten.requested_attributes = {"personal_identifier",
                                               "age_over_18"};
             Presentation p = Must(attacker.Respond(rewritten), "respond");
             Reply r = Present(tb, request.correlation_id, p);
             const json& result = r.body.at("result");
             if (result.value("verified", false)) {
               detail = "weaker credential verified";
               return std::nullopt;
             }
             return MakeError(result.value("failure_reason", "unknown"));
           }}};
}

// --- AT.6 ------------------------------------------------------------------

std::vector<Probe> VerificationSpoofing() {
  return {{"IS.3", "presentation claiming a trusted issuer, signed with the "
                   "attacker's key",
           std::string(ToString(FailureReason::kBadSignature)), "",
           [](Testbed& tb, std::string& detail) -> std::optional<Error> {
             BrowserSession s = OpenSession(tb, tb.tenant_a().confidential);
             PresentationRequest request = StartVerification(tb, s);
             SimWallet attacker("attacker");
             SimCredential fake;
             fake.credential_id = "urn:uuid:" + NewUuidV4();
             fake.ecosystem = Ecosystem::kEudi;
             fake.issuer_id = kPidIssuer;
             fake.credential_type = kPidCredentialType;
             fake.attributes = Testbed::PidAttributes();
             fake.attributes["personal_identifier"] = "PID-VICTIM-0000001";
             fake.expires_at = tb.clock().Now() + std::chrono::hours(24);
             fake.issuer_key = std::make_shared<const Ed25519PrivateKey>(
                 Ed25519PrivateKey::Generate());
             attacker.credentials().push_back(fake);
             Presentation p = Must(attacker.Respond(request), "respond");
             Reply r = Present(tb, request.correlation_id, p);
             const json& result = r.body.at("result");
             if (result.value("verified", false)) {
               detail = "forged presentation verified";
               return std::nullopt;
             }
             return MakeError(result.value("failure_reason", "unknown"));
           }},
          {"IS.6", "verification result injected without a service token",
           std::string(errc::kUnauthorized), "",
           [](Testbed& tb, std::string& detail) -> std::optional<Error> {
             const auto& client = tb.tenant_a().confidential;
             BrowserSession s = OpenSession(tb, client);
             PresentationRequest request = StartVerification(tb, s);
             VerificationResult forged{request.correlation_id, true,
                                       Testbed::PidAttributes(), kPidIssuer,
                                       std::nullopt};
             httplib::Client http(tb.base_url());
             std::optional<Error> first;
             for (const char* bearer : {"", "Bearer forged-service-token"}) {
               httplib::Headers headers;
               if (*bearer) headers.emplace("Authorization", bearer);
               Reply r = Send(http.Post("/internal/verification-result",
                                        headers, json(forged).dump(),
                                        "application/json"));
               auto error = ErrorOf(r);
               if (!error) {
                 detail = "injected result accepted";
                 return std::nullopt;
               }
               if (!first) first = error;
             }
             auto status =
                 tb.system().bridge.VerificationStatus(client.record.client_id,
                                                       s.session_id);
             if (!status.ok() || status->status != SessionStatus::kPending) {
               detail = "session changed by injected result";
               return std::nullopt;
             }
             return first;
           }}};
}

// --- AT.7 ------------------------------------------------------------------

std::vector<Probe> CredentialReplay() {
  return {{"IS.2", "identical presentation submitted twice",
           std::string(ToString(FailureReason::kNonceReplayed)), "",
           [](Testbed& tb, std::string& detail) -> std::optional<Error> {
             BrowserSession s = OpenSession(tb, tb.tenant_a().confidential);
             PresentationRequest request = StartVerification(tb, s);
             Presentation p = Must(tb.wallet().Respond(request), "respond");
             Reply first = Present(tb, request.correlation_id, p);
             if (!first.body.at("result").value("verified", false)) {
               throw SetupFailure("honest presentation rejected");
             }
             Reply replay = Present(tb, request.correlation_id, p);
             const json& result = replay.body.at("result");
             if (result.value("verified", false) ||
                 replay.body.value("accepted", false)) {
               detail = "replayed presentation accepted";
               return std::nullopt;
             }
             return MakeError(result.value("failure_reason", "unknown"));
           }},
          {"IS.9", "captured presentation submitted after the request expired",
           std::string(errc::kCorrelationNotFound), "",
           [](Testbed& tb, std::string& detail) {
             BrowserSession s = OpenSession(tb, tb.tenant_a().confidential);
             PresentationRequest request = StartVerification(tb, s);
             Presentation p = Must(tb.wallet().Respond(request), "respond");
             tb.clock().Advance(std::chrono::minutes(5));
             Reply r = Present(tb, request.correlation_id, p);
             if (r.status == 200) detail = "late presentation processed";
             return ErrorOf(r);
           }}};
}

// --- AT.8 ------------------------------------------------------------------

std::vector<Probe> CredentialIsolation() {
  return {{"IS.6", "tenant A client requests tenant B's scope",
           std::string(errc::kInvalidScope), "",
           [](Testbed& tb, std::string& detail) -> std::optional<Error> {
             const auto& client = tb.tenant_a().confidential;
             rp::RelyingParty rp(tb.RpConfigFor(client, kKycScope), tb.clock());
             auto start = Must(rp.BeginLogin(), "begin login");
             httplib::Client http(tb.base_url());
             Reply r = Send(
                 http.Get(start.authorize_url.substr(tb.base_url().size())));
             std::string location = Header(r, "Location");
             if (r.status != 302) return ErrorOf(r);
             if (location.rfind(client.record.redirect_uris[0], 0) != 0) {
               detail = "session started for a foreign scope";
               return std::nullopt;
             }
             auto query = ParseQuery(location.substr(location.find('?') + 1))
                              .value_or(QueryParams{});
             return MakeError(FindParam(query, "error").value_or("none"),
                              FindParam(query, "error_description").value_or(""));
           }},
          {"IS.6", "tenant A admin registers a client for tenant B's scope",
           std::string(errc::kInvalidScope), "",
           [](Testbed& tb, std::string& detail) {
             httplib::Client http(tb.base_url());
             json body = {{"kind", "oidc"},
                          {"client_type", "confidential"},
                          {"redirect_uris", {"https://evil.example/cb"}},
                          {"allowed_scopes", {kKycScope}}};
             Reply r = Send(http.Post(
                 "/admin/clients",
                 httplib::Headers{{"Authorization",
                                   "Bearer " + tb.tenant_a().admin_token}},
                 body.dump(), "application/json"));
             if (r.status == 201) detail = "client registered";
             return ErrorOf(r);
           }},
          {"IS.6", "tenant A secret presented for tenant B's client",
           std::string(errc::kInvalidClient), "",
           [](Testbed& tb, std::string& detail) {
             QueryParams form = {{"grant_type", "authorization_code"},
                                 {"code", RandomToken(32)},
                                 {"redirect_uri", "https://rp-b.example/cb"},
                                 {"code_verifier", RandomToken(32)}};
             Reply r = PostToken(
                 tb, form,
                 std::pair{tb.tenant_b().confidential.record.client_id.value(),
                           *tb.tenant_a().confidential.client_secret});
             if (r.status == 200) detail = "authenticated across tenants";
             return ErrorOf(r);
           }}};
}

// --- AT.9 ------------------------------------------------------------------

std::vector<Probe> SessionIsolation() {
  return {{"IS.7", "tenant B client reads a tenant A session",
           std::string(errc::kSessionNotFound), "unknown session",
           [](Testbed& tb, std::string& detail) -> std::optional<Error> {
             BrowserSession s = OpenSession(tb, tb.tenant_a().confidential);
             const ClientId& foreign = tb.tenant_b().confidential.record.client_id;
             if (tb.system().session_store.Get(Namespace::kSession,
                                               SessionKey(foreign, s.session_id))) {
               detail = "session visible under a foreign client prefix";
               return std::nullopt;
             }
             Reply r = PollStatus(tb, s.session_id, foreign,
                                  s.set_cookie.substr(0, s.set_cookie.find(';')));
             if (r.status == 200) detail = "foreign client read the session";
             return ErrorOf(r);
           }}};
}

// --- AT.10 -----------------------------------------------------------------

std::vector<Probe> TemplateIsolation() {
  auto read = [](bool with_token) {
    return [with_token](Testbed& tb, std::string& detail) {
      httplib::Client http(tb.base_url());
      httplib::Headers headers;
      if (with_token) {
        headers.emplace("Authorization", "Bearer " + tb.tenant_a().admin_token);
      }
      Reply r = Send(http.Get(
          "/admin/templates/" + tb.tenant_b().tmpl.template_id.value(), headers));
      if (r.status == 200) detail = "tenant B template returned";
      return ErrorOf(r);
    };
  };
  return {{"IS.4", "tenant A admin reads tenant B's template by id",
           std::string(errc::kUnauthorized), "", read(true)},
          {"IS.6", "unauthenticated read of a template by id",
           std::string(errc::kUnauthorized), "", read(false)}};
}

// --- AT.11 -----------------------------------------------------------------

std::vector<Probe> TokenMisuse() {
  return {{"IS.3", "ID Token minted for client A presented to client B",
           std::string(errc::kTokenInvalid), "aud",
           [](Testbed& tb, std::string& detail) {
             auto [token, nonce] = ObtainIdToken(tb, tb.tenant_a().confidential);
             rp::RelyingParty other = DiscoveredRp(tb, tb.tenant_b().confidential);
             // Even with the right nonce, the audience must not match.
             auto r = other.ValidateIdToken(token, nonce, tb.system().bridge.Jwks());
             if (r.ok()) detail = "token accepted by the wrong audience";
             return ErrorOfResult(r);
           }},
          {"IS.6", "client A's code and verifier redeemed by client B",
           std::string(errc::kInvalidClient), "",
           [](Testbed& tb, std::string& detail) {
             const auto& owner = tb.tenant_a().confidential;
             const auto& other = tb.tenant_a().public_client;
             Flow f = CompleteFlow(tb, owner);
             QueryParams form = CodeForm(f, owner, f.start.pending.code_verifier);
             form.emplace_back("client_id", other.record.client_id.value());
             Reply r = PostToken(tb, form, std::nullopt);
             if (r.status == 200) detail = "code redeemed by another client";
             return ErrorOf(r);
           }}};
}

const std::map<std::string, std::function<std::vector<Probe>()>>& ProbeTable() {
  static const auto* table =
      new std::map<std::string, std::function<std::vector<Probe>()>>{
          {"AT.1", AuthCodeInterception}, {"AT.2", Csrf},
          {"AT.3", TokenReplay},          {"AT.4", SessionHijacking},
          {"AT.5", RequestManipulation},  {"AT.6", VerificationSpoofing},
          {"AT.7", CredentialReplay},     {"AT.8", CredentialIsolation},
          {"AT.9", SessionIsolation},     {"AT.10", TemplateIsolation},
          {"AT.11", TokenMisuse}};
  return *table;
}

std::optional<std::string> NormalizeId(std::string_view id) {
  std::string digits;
  std::string prefix;
  for (char c : id) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
    } else if (c != '.') {
      prefix += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
  }
  if (prefix != "AT" || digits.empty()) return std::nullopt;
  std::string canonical = "AT." + digits;
  if (!ProbeTable().contains(canonical)) return std::nullopt;
  return canonical;
}

const AttackScenario& ScenarioById(const std::string& id) {
  for (const auto& s : AttackScenarios()) {
    if (s.id == id) return s;
  }
  throw std::logic_error("unknown scenario " + id);
}

}  // namespace

const std::vector<AttackScenario>& AttackScenarios() {
  static const auto* scenarios = new std::vector<AttackScenario>{
      {"AT.1", "Authorization code interception",
       "stolen code + wrong verifier", "IS.1", {"IS.2", "IS.5"}},
      {"AT.2", "Cross-site request forgery",
       "forged callback with foreign state", "IS.2", {"IS.5", "IS.8"}},
      {"AT.3", "Token replay", "ID Token replayed across sessions", "IS.2",
       {"IS.3", "IS.5"}},
      {"AT.4", "Session hijacking", "foreign, guessed or expired session id",
       "IS.5", {"IS.2", "IS.9"}},
      {"AT.5", "Proof request manipulation",
       "auth token with mutated template_id", "IS.4", {"IS.3", "IS.8"}},
      {"AT.6", "Verification result spoofing",
       "forged presentation; result injected without service token", "IS.3",
       {"IS.6"}},
      {"AT.7", "Credential presentation replay", "replayed presentation",
       "IS.2", {"IS.3", "IS.9"}},
      {"AT.8", "Client credential isolation",
       "tenant A client using tenant B scope", "IS.6", {"IS.4", "IS.7"}},
      {"AT.9", "Session data isolation",
       "session fetch with mismatched client prefix", "IS.7", {"IS.6"}},
      {"AT.10", "Proof template isolation", "cross-tenant template read",
       "IS.4", {"IS.6", "IS.7"}},
      {"AT.11", "Token audience misuse",
       "token for client A validated as client B", "IS.3", {"IS.6"}},
  };
  return *scenarios;
}

std::string_view ControlName(std::string_view control) {
  static const std::map<std::string_view, std::string_view> kNames = {
      {"IS.1", "PKCE"},
      {"IS.2", "State/nonce/challenge binding"},
      {"IS.3", "Cryptographic validation"},
      {"IS.4", "Template enforcement"},
      {"IS.5", "Session management"},
      {"IS.6", "Tenant authorization"},
      {"IS.7", "Data isolation"},
      {"IS.8", "Input validation"},
      {"IS.9", "Expiry"}};
  auto it = kNames.find(control);
  return it == kNames.end() ? std::string_view("unknown") : it->second;
}

bool ScenarioOutcome::Passed(const AttackScenario& scenario) const {
  if (!blocked || observed_control != scenario.primary_control) return false;
  return std::all_of(probes.begin(), probes.end(), [](const ProbeOutcome& p) {
    return p.blocked && p.observed_error == p.expected_error;
  });
}

Result<ScenarioOutcome> RunScenario(std::string_view id,
                                    const HarnessOptions& options) {
  auto canonical = NormalizeId(id);
  if (!canonical) {
    return MakeError(errc::kUnknownScenario,
                     "no scenario " + std::string(id));
  }
  ScenarioOutcome out;
  out.id = *canonical;
  out.blocked = true;
  for (Probe& probe : ProbeTable().at(*canonical)()) {
    ProbeOutcome p;
    p.control = probe.control;
    p.description = probe.description;
    p.expected_error = probe.expected_error;
    try {
      Testbed tb(TestbedOptions{options.faults});
      std::optional<Error> error = probe.attack(tb, p.detail);
      p.blocked = error.has_value();
      p.observed_error = error ? error->code : "none";
      if (error) {
        bool described = probe.expected_description.empty() ||
                         error->description.find(probe.expected_description) !=
                             std::string::npos;
        if (!described) p.observed_error += " (" + error->description + ")";
        if (p.detail.empty()) p.detail = error->description;
      }
    } catch (const SetupFailure& e) {
      p.observed_error = "setup_failed";
      p.detail = e.what();
    } catch (const std::exception& e) {
      p.observed_error = "exception";
      p.detail = e.what();
    }
    out.blocked = out.blocked && p.blocked;
    out.probes.push_back(std::move(p));
  }
  const ProbeOutcome& primary = out.probes.front();
  out.observed_error = primary.observed_error;
  out.observed_control = primary.blocked &&
                                 primary.observed_error == primary.expected_error
                             ? primary.control
                             : "none";
  return out;
}

std::vector<ScenarioOutcome> RunAll(const HarnessOptions& options) {
  std::vector<ScenarioOutcome> out;
  for (const auto& s : AttackScenarios()) out.push_back(*RunScenario(s.id, options));
  return out;
}

bool AllPassed(const std::vector<ScenarioOutcome>& outcomes) {
  return std::all_of(outcomes.begin(), outcomes.end(), [](const auto& o) {
    return o.Passed(ScenarioById(o.id));
  });
}

std::string RenderReport(const std::vector<ScenarioOutcome>& outcomes,
                         const HarnessOptions& options) {
  std::ostringstream md;
  md << "# Threat-control traceability\n\n";
  std::string faults;
  if (options.faults.disable_pkce_check) faults += " pkce";
  if (options.faults.disable_tenant_filter) faults += " tenant-filter";
  md << "Fault injection:" << (faults.empty() ? " none" : faults) << "\n\n";
  md << "| ID | Threat | Primary control | Supporting | Observed control | "
        "Observed error | Blocked | Result |\n";
  md << "|---|---|---|---|---|---|---|---|\n";
  size_t blocked = 0;
  size_t passed = 0;
  for (const auto& o : outcomes) {
    const AttackScenario& s = ScenarioById(o.id);
    std::string supporting;
    for (const auto& c : s.supporting_controls) {
      supporting += (supporting.empty() ? "" : ", ") + c;
    }
    bool pass = o.Passed(s);
    blocked += o.blocked;
    passed += pass;
    md << "| " << s.id << " | " << s.threat << " | " << s.primary_control
       << " (" << ControlName(s.primary_control) << ") | " << supporting
       << " | " << o.observed_control << " | " << o.observed_error << " | "
       << (o.blocked ? "yes" : "no") << " | "
       << (pass ? "PASS" : "FAIL (regression)") << " |\n";
  }
  md << "\n" << blocked << "/" << outcomes.size() << " blocked, " << passed
     << "/" << outcomes.size() << " pass\n\n## Probes\n\n";
  for (const auto& o : outcomes) {
    for (const auto& p : o.probes) {
      md << "- " << o.id << " " << p.control << ": " << p.description << ": "
         << (p.blocked ? "blocked" : "NOT BLOCKED") << " (expected "
         << p.expected_error << ", observed " << p.observed_error << ")";
      if (!p.detail.empty()) md << ": " << p.detail;
      md << "\n";
    }
  }
  return md.str();
}

}  // namespace vcbridge
