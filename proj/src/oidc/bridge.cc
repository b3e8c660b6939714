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

#include "vcbridge/oidc/bridge.h"

#include <algorithm>
#include <sstream>

#include "vcbridge/common/jwt.h"

namespace vcbridge {
namespace {

using nlohmann::json;

constexpr size_t kMaxOpaqueParamLength = 512;
constexpr std::string_view kAuthTokenType = "vcb-auth+jwt";

std::vector<std::string> SplitScopes(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string scope;
  while (in >> scope) out.push_back(scope);
  return out;
}

size_t CountParam(const QueryParams& params, std::string_view name) {
  return std::count_if(params.begin(), params.end(),
                       [&](const auto& p) { return p.first == name; });
}

std::string AuthTokenIndexKey(std::string_view correlation_id) {
  return "auth:" + std::string(correlation_id);
}

std::string CodeKey(std::string_view code) { return "code:" + std::string(code); }

template <typename T>
std::optional<T> OptionalField(const json& j, const char* name) {
  if (!j.contains(name) || j.at(name).is_null()) return std::nullopt;
  return j.at(name).get<T>();
}

}  // namespace

std::string_view ToString(SessionStatus status) {
  switch (status) {
    case SessionStatus::kPending:
      return "pending";
    case SessionStatus::kVerified:
      return "verified";
    case SessionStatus::kFailed:
      return "failed";
  }
  return "pending";
}

std::optional<SessionStatus> ParseSessionStatus(std::string_view text) {
  if (text == "pending") return SessionStatus::kPending;
  if (text == "verified") return SessionStatus::kVerified;
  if (text == "failed") return SessionStatus::kFailed;
  return std::nullopt;
}

void to_json(json& j, const OidcSession& s) {
  j = json{{"session_id", s.session_id},
           {"client_id", s.client_id},
           {"tenant_id", s.tenant_id},
           {"redirect_uri", s.redirect_uri},
           {"requested_scopes", s.requested_scopes},
           {"template_id", s.template_id},
           {"state", s.state},
           {"nonce", s.nonce},
           {"code_challenge", s.code_challenge},
           {"code_challenge_method", s.code_challenge_method},
           {"status", ToString(s.status)},
           {"correlation_id", s.correlation_id},
           {"verified_claims", s.verified_claims},
           {"template", s.tmpl}};
  if (s.verified_sub) j["verified_sub"] = *s.verified_sub;
  if (s.failure_reason) j["failure_reason"] = *s.failure_reason;
  if (s.code) j["code"] = *s.code;
}

void from_json(const json& j, OidcSession& s) {
  j.at("session_id").get_to(s.session_id);
  j.at("client_id").get_to(s.client_id);
  j.at("tenant_id").get_to(s.tenant_id);
  j.at("redirect_uri").get_to(s.redirect_uri);
  j.at("requested_scopes").get_to(s.requested_scopes);
  j.at("template_id").get_to(s.template_id);
  j.at("state").get_to(s.state);
  j.at("nonce").get_to(s.nonce);
  j.at("code_challenge").get_to(s.code_challenge);
  j.at("code_challenge_method").get_to(s.code_challenge_method);
  s.status = ParseSessionStatus(j.at("status").get<std::string>())
                 .value_or(SessionStatus::kFailed);
  j.at("correlation_id").get_to(s.correlation_id);
  s.verified_claims = j.value("verified_claims", json::object());
  j.at("template").get_to(s.tmpl);
  s.verified_sub = OptionalField<std::string>(j, "verified_sub");
  s.failure_reason = OptionalField<std::string>(j, "failure_reason");
  s.code = OptionalField<std::string>(j, "code");
}

void to_json(json& j, const StatusPayload& p) {
  j = json{{"status", ToString(p.status)}};
  if (p.redirect_uri) j["redirect_uri"] = *p.redirect_uri;
  if (p.code) j["code"] = *p.code;
  if (p.state) j["state"] = *p.state;
  if (p.failure_reason) j["failure_reason"] = *p.failure_reason;
}

void to_json(json& j, const TokenResponse& r) {
  j = json{{"id_token", r.id_token},
           {"access_token", r.access_token},
           {"token_type", r.token_type},
           {"expires_in", r.expires_in}};
}

Bridge::Bridge(const Clock& clock, BridgeOptions options, SessionStore& store,
               const Iam& iam, const TemplateEngine& templates,
               VerifierService& verifier)
    : clock_(clock),
      options_(std::move(options)),
      store_(store),
      iam_(iam),
      templates_(templates),
      verifier_(verifier),
      keys_(clock, options_.keys),
      auth_token_key_(RsaPrivateKey::Generate(2048)) {}

std::string Bridge::SessionCookie(std::string_view session_id) const {
  auto max_age = std::chrono::duration_cast<std::chrono::seconds>(
                     options_.session_ttl)
                     .count();
  std::string cookie = std::string(kSessionCookieName) + "=" +
                       std::string(session_id) +
                       "; Path=/; Max-Age=" + std::to_string(max_age) +
                       "; HttpOnly; Secure; SameSite=";
  cookie += options_.same_site == SameSitePolicy::kLax ? "Lax" : "None";
  return cookie;
}

AuthorizeResponse Bridge::ErrorRedirect(const std::string& redirect_uri,
                                        const std::string* state,
                                        std::string_view code,
                                        std::string description) const {
  QueryParams params = {{"error", std::string(code)}, {"error_description", description}};
  if (state != nullptr) params.emplace_back("state", *state);
  AuthorizeResponse out;
  out.kind = AuthorizeResponse::Kind::kErrorRedirect;
  out.location = AppendQuery(redirect_uri, params);
  out.error = MakeError(code, std::move(description));
  return out;
}

AuthorizeResponse Bridge::HandleAuthorize(const QueryParams& query) {
  auto page = [](std::string_view code, std::string description) {
    AuthorizeResponse out;
    out.kind = AuthorizeResponse::Kind::kErrorPage;
    out.error = MakeError(code, std::move(description));
    return out;
  };

  // Until client and redirect_uri are established nothing may redirect.
  if (CountParam(query, "client_id") != 1) {
    return page(errc::kInvalidRequest, "client_id is required exactly once");
  }
  auto client = iam_.FindClient(ClientId(*FindParam(query, "client_id")));
  if (!client || client->kind != ClientKind::kOidc) {
    return page(errc::kInvalidClient, "unknown client");
  }
  if (CountParam(query, "redirect_uri") != 1) {
    return page(errc::kInvalidRequest, "redirect_uri is required exactly once");
  }
  std::string redirect_uri = *FindParam(query, "redirect_uri");
  bool registered =
      std::find(client->redirect_uris.begin(), client->redirect_uris.end(),
                redirect_uri) != client->redirect_uris.end();
  if (!registered) {
    return page(errc::kInvalidRequest, "redirect_uri is not registered");
  }

  std::optional<std::string> state;
  if (CountParam(query, "state") == 1) state = FindParam(query, "state");
  const std::string* state_ptr = state ? &*state : nullptr;
  auto fail = [&](std::string_view code, std::string description) {
    return ErrorRedirect(redirect_uri, state_ptr, code, std::move(description));
  };

  for (const auto& [name, _] : query) {
    if (CountParam(query, name) > 1) {
      return fail(errc::kInvalidRequest, "duplicate parameter " + name);
    }
  }
  auto response_type = FindParam(query, "response_type");
  if (!response_type) {
    return fail(errc::kInvalidRequest, "response_type is required");
  }
  if (*response_type != "code") {
    return fail(errc::kUnsupportedResponseType, "only code is supported");
  }
  if (!state || state->empty() || state->size() > kMaxOpaqueParamLength) {
    return fail(errc::kInvalidRequest, "state is required");
  }
  auto nonce = FindParam(query, "nonce");
  if (!nonce || nonce->empty() || nonce->size() > kMaxOpaqueParamLength) {
    return fail(errc::kInvalidRequest, "nonce is required");
  }
  auto challenge = FindParam(query, "code_challenge");
  auto method = FindParam(query, "code_challenge_method");
  if (!challenge || challenge->empty()) {
    return fail(errc::kInvalidRequest, "code_challenge is required");
  }
  if (!method || *method != "S256") {
    return fail(errc::kInvalidRequest, "code_challenge_method must be S256");
  }
  auto challenge_bytes = Base64UrlDecode(*challenge);
  if (!challenge_bytes || challenge_bytes->size() != 32) {
    return fail(errc::kInvalidRequest, "code_challenge is not an S256 value");
  }
  std::vector<std::string> scopes =
      SplitScopes(FindParam(query, "scope").value_or(""));
  if (std::find(scopes.begin(), scopes.end(), kOpenIdScope) == scopes.end()) {
    return fail(errc::kInvalidScope, "openid scope is required");
  }
  auto tmpl = templates_.ResolveScopes(*client, scopes);
  if (!tmpl.ok()) return fail(tmpl.error().code, tmpl.error().description);

  Timestamp now = clock_.Now();
  OidcSession session;
  session.session_id = NewUuidV4();
  session.client_id = client->client_id;
  session.tenant_id = client->tenant_id;
  session.redirect_uri = redirect_uri;
  session.requested_scopes = scopes;
  session.template_id = tmpl->template_id;
  session.state = *state;
  session.nonce = *nonce;
  session.code_challenge = *challenge;
  session.code_challenge_method = *method;
  session.correlation_id = NewUuidV4();
  session.tmpl = *tmpl;
  store_.Put(Namespace::kSession,
             SessionKey(session.client_id, session.session_id),
             json(session).dump(), options_.session_ttl);

  AuthTokenClaims claims{session.session_id, session.correlation_id,
                         session.client_id,  session.template_id,
                         now,                now + options_.auth_token_ttl};
  json index = {{"session_id", session.session_id},
                {"client_id", session.client_id},
                {"template_id", session.template_id}};
  store_.Put(Namespace::kAuthToken, AuthTokenIndexKey(session.correlation_id),
             index.dump(), options_.auth_token_ttl);

  AuthorizeResponse out;
  out.kind = AuthorizeResponse::Kind::kRedirect;
  out.location = AppendQuery(options_.auth_ui_url,
                             {{"auth_token", SignAuthToken(claims)}});
  out.set_cookie = SessionCookie(session.session_id);
  out.session_id = session.session_id;
  return out;
}

std::string Bridge::SignAuthToken(const AuthTokenClaims& claims) const {
  json header = {{"alg", "RS256"}, {"typ", kAuthTokenType}};
  json payload = {{"sid", claims.session_id},
                  {"correlation_id", claims.correlation_id},
                  {"client_id", claims.client_id},
                  {"template_id", claims.template_id},
                  {"iat", ToEpochSeconds(claims.issued_at)},
                  {"exp", ToEpochSeconds(claims.expires_at)}};
  return SignRs256Jwt(header, payload, auth_token_key_);
}

Result<AuthTokenClaims> Bridge::ValidateAuthToken(
    std::string_view token) const {
  auto invalid = [](std::string description) {
    return MakeError(errc::kInvalidAuthToken, std::move(description));
  };
  auto jwt = DecodeJwt(token);
  if (!jwt.ok()) return invalid("malformed auth token");
  if (jwt->header.value("typ", "") != kAuthTokenType ||
      !VerifyRs256Jwt(*jwt, auth_token_key_.public_key())) {
    return invalid("auth token signature invalid");
  }
  AuthTokenClaims claims;
  try {
    const json& p = jwt->payload;
    p.at("sid").get_to(claims.session_id);
    p.at("correlation_id").get_to(claims.correlation_id);
    p.at("client_id").get_to(claims.client_id);
    p.at("template_id").get_to(claims.template_id);
    claims.issued_at = FromEpochSeconds(p.at("iat").get<int64_t>());
    claims.expires_at = FromEpochSeconds(p.at("exp").get<int64_t>());
  } catch (const json::exception&) {
    return invalid("auth token claims malformed");
  }
  if (clock_.Now() >= claims.expires_at) return invalid("auth token expired");
  auto index = store_.Get(Namespace::kAuthToken,
                          AuthTokenIndexKey(claims.correlation_id));
  if (!index) return invalid("auth token unknown or expired");
  json stored = json::parse(*index);
  if (stored.at("session_id") != claims.session_id ||
      stored.at("template_id") != claims.template_id.value() ||
      stored.at("client_id") != claims.client_id.value()) {
    return invalid("auth token does not match its session");
  }
  return claims;
}

Result<AuthContext> Bridge::GetAuthContext(std::string_view auth_token) const {
  auto claims = ValidateAuthToken(auth_token);
  if (!claims.ok()) return claims.error();
  auto stored = store_.Get(Namespace::kSession,
                           SessionKey(claims->client_id, claims->session_id));
  if (!stored) return MakeError(errc::kSessionNotFound, "session expired");
  OidcSession session = json::parse(*stored).get<OidcSession>();
  AuthContext ctx{*claims, session.tmpl.name, {}};
  for (const auto& [ecosystem, _] : session.tmpl.ecosystem_configs) {
    ctx.ecosystems.push_back(ecosystem);
  }
  return ctx;
}

Result<VerificationStart> Bridge::StartVerification(
    std::string_view auth_token, Ecosystem ecosystem) {
  auto claims = ValidateAuthToken(auth_token);
  if (!claims.ok()) return claims.error();
  auto stored = store_.Get(Namespace::kSession,
                           SessionKey(claims->client_id, claims->session_id));
  if (!stored) return MakeError(errc::kSessionNotFound, "session expired");
  OidcSession session = json::parse(*stored).get<OidcSession>();
  if (session.status != SessionStatus::kPending) {
    return MakeError(errc::kInvalidState, "session already completed");
  }
  auto request = verifier_.StartVerification(
      session.tmpl, ecosystem, session.correlation_id, claims->expires_at);
  if (!request.ok()) return request.error();
  return VerificationStart{*request,
                           verifier_.RequestUri(request->correlation_id),
                           verifier_.DeepLink(*request)};
}

Result<StatusPayload> Bridge::VerificationStatus(
    const ClientId& client_id, std::string_view session_id) const {
  auto stored = store_.Get(Namespace::kSession, SessionKey(client_id, session_id));
  if (!stored) return MakeError(errc::kSessionNotFound, "unknown session");
  OidcSession session = json::parse(*stored).get<OidcSession>();
  StatusPayload out;
  out.status = session.status;
  if (session.status == SessionStatus::kVerified) {
    out.redirect_uri = session.redirect_uri;
    out.code = session.code;
    out.state = session.state;
  }
  out.failure_reason = session.failure_reason;
  return out;
}

Status Bridge::CompleteVerification(std::string_view service_token,
                                    std::string_view correlation_id,
                                    const VerificationResult& result) {
  auto caller = iam_.ValidateServiceToken(service_token);
  if (!caller.ok()) return caller.error();
  auto index =
      store_.Get(Namespace::kAuthToken, AuthTokenIndexKey(correlation_id));
  if (!index) {
    return MakeError(errc::kCorrelationNotFound, "unknown correlation id");
  }
  json link = json::parse(*index);
  ClientId client_id(link.at("client_id").get<std::string>());
  std::string session_key =
      SessionKey(client_id, link.at("session_id").get<std::string>());

  // The code is stored before the session flips, so a poller that sees
  // "verified" can always exchange it. Withdrawn unless the flip happens.
  std::string code = RandomToken(32);
  if (result.verified) {
    json record = {{"session_id", link.at("session_id")},
                   {"client_id", client_id}};
    store_.Put(Namespace::kAuthCode, CodeKey(code), record.dump(),
               options_.code_ttl);
  }
  bool minted = false;
  std::optional<Error> refusal;
  UpdateOutcome outcome = store_.Update(
      Namespace::kSession, session_key,
      [&](const std::string& current) -> std::optional<std::string> {
        OidcSession session = json::parse(current).get<OidcSession>();
        if (session.status != SessionStatus::kPending) {
          refusal = MakeError(errc::kInvalidState, "session already completed");
          return std::nullopt;
        }
        if (result.correlation_id != session.correlation_id) {
          refusal = MakeError(errc::kCorrelationNotFound,
                              "result does not belong to this session");
          return std::nullopt;
        }
        session.status = SessionStatus::kFailed;
        if (!result.verified) {
          session.failure_reason =
              result.failure_reason ? std::string(ToString(*result.failure_reason))
                                    : "verification_failed";
        } else if (auto mapped = MapClaims(session.tmpl, result); !mapped.ok()) {
          session.failure_reason = mapped.error().code;
        } else {
          session.status = SessionStatus::kVerified;
          session.verified_sub = mapped->sub;
          session.verified_claims = mapped->custom_claims;
          session.code = code;
          minted = true;
        }
        return json(session).dump();
      });
  if (result.verified && !minted) {
    store_.Take(Namespace::kAuthCode, CodeKey(code));
  }
  if (outcome == UpdateOutcome::kAbsent) {
    return MakeError(errc::kCorrelationNotFound, "session expired");
  }
  if (outcome == UpdateOutcome::kRejected) return *refusal;
  return OkStatus();
}

Result<TokenResponse> Bridge::HandleToken(
    const QueryParams& form, const std::optional<BasicCredentials>& basic) {
  for (const auto& [name, _] : form) {
    if (CountParam(form, name) > 1) {
      return MakeError(errc::kInvalidRequest, "duplicate parameter " + name);
    }
  }
  auto grant_type = FindParam(form, "grant_type");
  if (!grant_type) return MakeError(errc::kInvalidRequest, "grant_type missing");
  if (*grant_type != "authorization_code") {
    return MakeError(errc::kUnsupportedGrantType,
                     "only authorization_code is supported");
  }
  auto code = FindParam(form, "code");
  auto verifier = FindParam(form, "code_verifier");
  auto redirect_uri = FindParam(form, "redirect_uri");
  if (!code || !verifier || !redirect_uri) {
    return MakeError(errc::kInvalidRequest,
                     "code, code_verifier and redirect_uri are required");
  }

  std::optional<std::string> client_id = FindParam(form, "client_id");
  std::optional<std::string> secret = FindParam(form, "client_secret");
  if (basic) {
    if (client_id && *client_id != basic->first) {
      return MakeError(errc::kInvalidRequest, "conflicting client_id");
    }
    if (secret) {
      return MakeError(errc::kInvalidRequest,
                       "more than one client authentication method");
    }
    client_id = basic->first;
    secret = basic->second;
  }
  if (!client_id) return MakeError(errc::kInvalidRequest, "client_id missing");
  std::optional<std::string_view> presented;
  if (secret) presented = *secret;
  auto client = iam_.ValidateClient(ClientId(*client_id), presented);
  if (!client.ok()) return client.error();

  auto record = store_.Take(Namespace::kAuthCode, CodeKey(*code));
  if (!record) {
    return MakeError(errc::kInvalidGrant, "code is invalid, expired or used");
  }
  json link = json::parse(*record);
  ClientId bound_client(link.at("client_id").get<std::string>());
  auto stored = store_.Take(
      Namespace::kSession,
      SessionKey(bound_client, link.at("session_id").get<std::string>()));
  if (!stored) return MakeError(errc::kInvalidGrant, "session expired");
  OidcSession session = json::parse(*stored).get<OidcSession>();

  bool pkce_ok = IsValidCodeVerifier(*verifier) &&
                 ConstantTimeEquals(PkceS256Challenge(*verifier),
                                    session.code_challenge);
#ifdef VCBRIDGE_FAULT_INJECTION
  if (faults_.disable_pkce_check) pkce_ok = true;
#endif
  if (!pkce_ok) {
    return MakeError(errc::kInvalidGrant, "PKCE verification failed");
  }
  if (session.client_id != client->client_id) {
    return MakeError(errc::kInvalidClient, "code was issued to another client");
  }
  if (session.redirect_uri != *redirect_uri) {
    return MakeError(errc::kInvalidGrant, "redirect_uri mismatch");
  }
  if (session.status != SessionStatus::kVerified) {
    return MakeError(errc::kInvalidGrant, "session is not verified");
  }

  auto id_token = IssueIdToken(session);
  if (!id_token.ok()) return id_token.error();
  TokenResponse out;
  out.id_token = *id_token;
  out.access_token = RandomToken(32);
  out.expires_in =
      std::chrono::duration_cast<std::chrono::seconds>(options_.access_token_ttl)
          .count();
  return out;
}

Result<std::string> Bridge::IssueIdToken(const OidcSession& session) {
  if (session.status != SessionStatus::kVerified || !session.verified_sub) {
    return MakeError(errc::kInvalidState, "session is not verified");
  }
  auto key = keys_.ActiveKey();
  if (!key) return MakeError(errc::kInternalError, "no active signing key");
  Timestamp now = clock_.Now();
  json claims = session.verified_claims.is_object() ? session.verified_claims
                                                    : json::object();
  claims["iss"] = options_.issuer;
  claims["sub"] = *session.verified_sub;
  claims["aud"] = session.client_id.value();
  claims["iat"] = ToEpochSeconds(now);
  claims["exp"] = ToEpochSeconds(now + options_.id_token_ttl);
  claims["nonce"] = session.nonce;
  json header = {{"alg", "RS256"}, {"typ", "JWT"}, {"kid", key->kid}};
  return SignRs256Jwt(header, claims, key->key);
}

json Bridge::DiscoveryDocument() const {
  const std::string& iss = options_.issuer;
  return json{
      {"issuer", iss},
      {"authorization_endpoint", iss + "/authorize"},
      {"token_endpoint", iss + "/token"},
      {"jwks_uri", iss + "/.well-known/jwks.json"},
      {"response_types_supported", {"code"}},
      {"response_modes_supported", {"query"}},
      {"grant_types_supported", {"authorization_code"}},
      {"subject_types_supported", {"public"}},
      {"id_token_signing_alg_values_supported", {"RS256"}},
      {"code_challenge_methods_supported", {"S256"}},
      {"token_endpoint_auth_methods_supported",
       {"client_secret_basic", "client_secret_post", "none"}},
      {"scopes_supported", {"openid"}},
      {"claims_supported", {"iss", "sub", "aud", "exp", "iat", "nonce"}},
  };
}

}  // namespace vcbridge
