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

#ifndef VCBRIDGE_RP_RELYING_PARTY_H_
#define VCBRIDGE_RP_RELYING_PARTY_H_

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vcbridge/common/clock.h"
#include "vcbridge/common/encoding.h"
#include "vcbridge/common/result.h"

namespace vcbridge::rp {

struct RpConfig {
  std::string issuer_url;
  std::string client_id;
  std::optional<std::string> client_secret;
  std::string redirect_uri;
  std::vector<std::string> scopes = {"openid"};
};

struct PendingLogin {
  std::string state;
  std::string nonce;
  std::string code_verifier;
  Timestamp created_at;
};

struct LoginStart {
  std::string authorize_url;
  PendingLogin pending;
};

struct ProviderMetadata {
  std::string issuer;
  std::string authorization_endpoint;
  std::string token_endpoint;
  std::string jwks_uri;
};

// A plain OIDC client: discovery, PKCE, code exchange and ID Token
// validation against the published JWKS.
class RelyingParty {
 public:
  RelyingParty(RpConfig config, const Clock& clock);

  // Fetches issuer_url + "/.well-known/openid-configuration".
  Status Discover();
  Result<LoginStart> BeginLogin();
  // Returns the validated ID Token claims.
  Result<nlohmann::json> FinishLogin(const QueryParams& callback,
                                     const PendingLogin& pending);
  // Signature (by kid), iss, aud, exp and nonce; token_invalid otherwise.
  Result<nlohmann::json> ValidateIdToken(const std::string& id_token,
                                         const std::string& expected_nonce,
                                         const nlohmann::json& jwks) const;

  const RpConfig& config() const { return config_; }
  const std::optional<ProviderMetadata>& metadata() const { return metadata_; }

 private:
  RpConfig config_;
  const Clock& clock_;
  std::optional<ProviderMetadata> metadata_;
};

}  // namespace vcbridge::rp

#endif  // VCBRIDGE_RP_RELYING_PARTY_H_
