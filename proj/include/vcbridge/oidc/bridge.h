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

#ifndef VCBRIDGE_OIDC_BRIDGE_H_
#define VCBRIDGE_OIDC_BRIDGE_H_

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "vcbridge/common/clock.h"
#include "vcbridge/common/crypto.h"
#include "vcbridge/common/encoding.h"
#include "vcbridge/common/fault_injection.h"
#include "vcbridge/common/ids.h"
#include "vcbridge/common/result.h"
#include "vcbridge/iam/iam.h"
#include "vcbridge/oidc/key_manager.h"
#include "vcbridge/store/session_store.h"
#include "vcbridge/templates/proof_template.h"
#include "vcbridge/templates/template_engine.h"
#include "vcbridge/verifier/verifier_service.h"

namespace vcbridge {

inline constexpr std::string_view kSessionCookieName = "vcb_session";

enum class SameSitePolicy { kLax, kNone };

struct BridgeOptions {
  // External base URL; echoed byte-for-byte as "iss" and in discovery.
  std::string issuer = "http://localhost:8080";
  // Authentication frontend. /authorize redirects here with ?auth_token=.
  std::string auth_ui_url = "http://localhost:8080/ui/auth.html";
  Duration session_ttl = std::chrono::minutes(30);
  Duration code_ttl = std::chrono::minutes(10);
  Duration auth_token_ttl = std::chrono::minutes(5);
  Duration id_token_ttl = std::chrono::hours(1);
  Duration access_token_ttl = std::chrono::minutes(60);
  SameSitePolicy same_site = SameSitePolicy::kLax;
  KeyRotationOptions keys;
};

enum class SessionStatus { kPending, kVerified, kFailed };
std::string_view ToString(SessionStatus status);
std::optional<SessionStatus> ParseSessionStatus(std::string_view text);

struct OidcSession {
  std::string session_id;
  ClientId client_id;
  TenantId tenant_id;
  std::string redirect_uri;
  std::vector<std::string> requested_scopes;
  TemplateId template_id;
  std::string state;
  std::string nonce;
  std::string code_challenge;
  std::string code_challenge_method;
  SessionStatus status = SessionStatus::kPending;
  std::string correlation_id;
  std::optional<std::string> verified_sub;
  nlohmann::json verified_claims = nlohmann::json::object();
  std::optional<std::string> failure_reason;
  std::optional<std::string> code;  // set on pending -> verified
  // Copy of the template taken at authorize time.
  ProofTemplate tmpl;
};

void to_json(nlohmann::json& j, const OidcSession& s);
void from_json(const nlohmann::json& j, OidcSession& s);

struct AuthorizeResponse {
  enum class Kind { kRedirect, kErrorRedirect, kErrorPage };
  Kind kind = Kind::kErrorPage;
  std::string location;              // kRedirect / kErrorRedirect
  std::optional<Error> error;        // kErrorRedirect / kErrorPage
  std::optional<std::string> set_cookie;
  std::string session_id;            // kRedirect
};

struct AuthTokenClaims {
  std::string session_id;
  std::string correlation_id;
  ClientId client_id;
  TemplateId template_id;
  Timestamp issued_at;
  Timestamp expires_at;
};

// What the authentication frontend needs to render wallet choices.
struct AuthContext {
  AuthTokenClaims claims;
  std::string template_name;
  std::vector<Ecosystem> ecosystems;
};

struct VerificationStart {
  PresentationRequest request;
  std::string request_uri;
  std::string deep_link;
};

struct StatusPayload {
  SessionStatus status = SessionStatus::kPending;
  // Present once verified; the frontend navigates to
  // redirect_uri?code=..&state=..
  std::optional<std::string> redirect_uri;
  std::optional<std::string> code;
  std::optional<std::string> state;
  std::optional<std::string> failure_reason;
};

void to_json(nlohmann::json& j, const StatusPayload& p);

struct TokenResponse {
  std::string id_token;
  std::string access_token;
  std::string token_type = "Bearer";
  int64_t expires_in = 0;
};

void to_json(nlohmann::json& j, const TokenResponse& r);

// Client credentials taken from an Authorization: Basic header.
using BasicCredentials = std::pair<std::string, std::string>;

// The OpenID Provider facing relying parties, plus the session orchestration
// between the OIDC flow and the southbound verification.
class Bridge {
 public:
  Bridge(const Clock& clock, BridgeOptions options, SessionStore& store,
         const Iam& iam, const TemplateEngine& templates,
         VerifierService& verifier);

  const BridgeOptions& options() const { return options_; }
  // Only before serving; the issuer is not synchronized.
  void set_issuer(std::string issuer) { options_.issuer = std::move(issuer); }
  void set_auth_ui_url(std::string url) { options_.auth_ui_url = std::move(url); }
  KeyManager& keys() { return keys_; }

  AuthorizeResponse HandleAuthorize(const QueryParams& query);

  Result<AuthTokenClaims> ValidateAuthToken(std::string_view token) const;
  Result<AuthContext> GetAuthContext(std::string_view auth_token) const;
  Result<VerificationStart> StartVerification(std::string_view auth_token,
                                              Ecosystem ecosystem);

  Result<StatusPayload> VerificationStatus(const ClientId& client_id,
                                           std::string_view session_id) const;

  Status CompleteVerification(std::string_view service_token,
                              std::string_view correlation_id,
                              const VerificationResult& result);

  // `form` is the decoded request body; credentials from an Authorization
  // header take precedence over client_id/client_secret form fields.
  Result<TokenResponse> HandleToken(
      const QueryParams& form,
      const std::optional<BasicCredentials>& basic = std::nullopt);

  Result<std::string> IssueIdToken(const OidcSession& session);

  nlohmann::json DiscoveryDocument() const;
  nlohmann::json Jwks() const { return keys_.Jwks(); }
  std::string RotateKeys(Timestamp now) { return keys_.RotateKeys(now); }

  void set_fault_injection(const FaultInjection& faults) { faults_ = faults; }

  // Signs an auth token; exposed so tests can forge variants.
  std::string SignAuthToken(const AuthTokenClaims& claims) const;

 private:
  AuthorizeResponse ErrorRedirect(const std::string& redirect_uri,
                                  const std::string* state,
                                  std::string_view code,
                                  std::string description) const;
  std::string SessionCookie(std::string_view session_id) const;

  const Clock& clock_;
  BridgeOptions options_;
  SessionStore& store_;
  const Iam& iam_;
  const TemplateEngine& templates_;
  VerifierService& verifier_;
  KeyManager keys_;
  // Auth tokens are internal to the bridge; this key is never published.
  RsaPrivateKey auth_token_key_;
  FaultInjection faults_;
};

}  // namespace vcbridge

#endif  // VCBRIDGE_OIDC_BRIDGE_H_
