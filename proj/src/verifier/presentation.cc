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

#include "vcbridge/verifier/presentation.h"

#include "vcbridge/common/encoding.h"

namespace vcbridge {

using nlohmann::json;

void to_json(json& j, const PresentationRequest& r) {
  j = json{{"correlation_id", r.correlation_id},
           {"ecosystem", r.ecosystem},
           {"challenge_nonce", r.challenge_nonce},
           {"requested_attributes", r.requested_attributes},
           {"trusted_issuers", r.trusted_issuers},
           {"credential_type", r.credential_type},
           {"expires_at", ToEpochSeconds(r.expires_at)}};
}

void from_json(const json& j, PresentationRequest& r) {
  r.correlation_id = j.at("correlation_id").get<std::string>();
  r.ecosystem = j.at("ecosystem").get<Ecosystem>();
  r.challenge_nonce = j.at("challenge_nonce").get<std::string>();
  r.requested_attributes =
      j.at("requested_attributes").get<std::vector<std::string>>();
  r.trusted_issuers = j.at("trusted_issuers").get<std::vector<std::string>>();
  r.credential_type = j.at("credential_type").get<std::string>();
  r.expires_at = FromEpochSeconds(j.at("expires_at").get<std::int64_t>());
}

void to_json(json& j, const Presentation& p) {
  j = json{{"ecosystem", p.ecosystem},
           {"credential_id", p.credential_id},
           {"credential_type", p.credential_type},
           {"issuer_id", p.issuer_id},
           {"attributes", p.attributes},
           {"challenge_nonce_echo", p.challenge_nonce_echo},
           {"credential_expires_at", ToEpochSeconds(p.credential_expires_at)},
           {"holder_signature", Base64UrlEncode(p.holder_signature)}};
}

void from_json(const json& j, Presentation& p) {
  p.ecosystem = j.at("ecosystem").get<Ecosystem>();
  p.credential_id = j.at("credential_id").get<std::string>();
  p.credential_type = j.at("credential_type").get<std::string>();
  p.issuer_id = j.at("issuer_id").get<std::string>();
  p.attributes = j.at("attributes").get<AttributeMap>();
  p.challenge_nonce_echo = j.at("challenge_nonce_echo").get<std::string>();
  p.credential_expires_at =
      FromEpochSeconds(j.at("credential_expires_at").get<std::int64_t>());
  auto sig = Base64UrlDecode(j.at("holder_signature").get<std::string>());
  p.holder_signature = sig.value_or(std::string{});
}

std::string CanonicalSigningPayload(const Presentation& p) {
  // nlohmann::json objects are std::map backed, so dump() emits sorted keys.
  json body{{"attributes", p.attributes},
            {"challenge_nonce_echo", p.challenge_nonce_echo},
            {"credential_expires_at", ToEpochSeconds(p.credential_expires_at)},
            {"credential_id", p.credential_id},
            {"credential_type", p.credential_type},
            {"ecosystem", p.ecosystem},
            {"issuer_id", p.issuer_id}};
  return body.dump();
}

void IssuerRegistry::Register(const std::string& issuer_id,
                              Ed25519PublicKey key, bool trusted) {
  std::unique_lock lock(mu_);
  issuers_.insert_or_assign(issuer_id, Entry{std::move(key), trusted});
}

void IssuerRegistry::SetTrusted(const std::string& issuer_id, bool trusted) {
  std::unique_lock lock(mu_);
  auto it = issuers_.find(issuer_id);
  if (it != issuers_.end()) it->second.trusted = trusted;
}

void IssuerRegistry::Revoke(const std::string& issuer_id,
                            const std::string& credential_id) {
  std::unique_lock lock(mu_);
  revoked_.emplace(issuer_id, credential_id);
}

std::optional<IssuerRegistry::Entry> IssuerRegistry::Find(
    const std::string& issuer_id) const {
  std::shared_lock lock(mu_);
  auto it = issuers_.find(issuer_id);
  if (it == issuers_.end()) return std::nullopt;
  return it->second;
}

bool IssuerRegistry::IsRevoked(const std::string& issuer_id,
                               const std::string& credential_id) const {
  std::shared_lock lock(mu_);
  return revoked_.contains({issuer_id, credential_id});
}

}  // namespace vcbridge
