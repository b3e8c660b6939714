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

#include "vcbridge/wallet/wallet_sim.h"

#include <algorithm>

namespace vcbridge {

std::string_view ToString(Tamper tamper) {
  switch (tamper) {
    case Tamper::kNone:
      return "none";
    case Tamper::kWrongNonce:
      return "wrong_nonce";
    case Tamper::kForgedSignature:
      return "forged_signature";
    case Tamper::kOmitAttribute:
      return "omit_attribute";
    case Tamper::kReusePreviousNonce:
      return "reuse_previous_nonce";
  }
  return "none";
}

std::optional<Tamper> ParseTamper(std::string_view text) {
  for (Tamper t : kAllTamperModes) {
    if (ToString(t) == text) return t;
  }
  return std::nullopt;
}

std::optional<FailureReason> ExpectedFailure(Tamper tamper) {
  switch (tamper) {
    case Tamper::kNone:
      return std::nullopt;
    case Tamper::kWrongNonce:
      return FailureReason::kNonceMismatch;
    case Tamper::kForgedSignature:
      return FailureReason::kBadSignature;
    case Tamper::kOmitAttribute:
      return FailureReason::kMissingAttribute;
    case Tamper::kReusePreviousNonce:
      return FailureReason::kNonceReplayed;
  }
  return std::nullopt;
}

SimIssuer::SimIssuer(std::string issuer_id, IssuerRegistry& registry,
                     bool trusted)
    : issuer_id_(std::move(issuer_id)),
      key_(std::make_shared<const Ed25519PrivateKey>(
          Ed25519PrivateKey::Generate())),
      registry_(registry) {
  registry_.Register(issuer_id_, key_->public_key(), trusted);
}

void SimIssuer::SetTrusted(bool trusted) {
  registry_.SetTrusted(issuer_id_, trusted);
}

void SimIssuer::Revoke(const std::string& credential_id) {
  registry_.Revoke(issuer_id_, credential_id);
}

SimCredential& IssueCredential(const SimIssuer& issuer, SimWallet& wallet,
                               Ecosystem ecosystem,
                               std::string credential_type,
                               AttributeMap attributes, Duration validity,
                               const Clock& clock) {
  SimCredential credential;
  credential.credential_id = "urn:uuid:" + NewUuidV4();
  credential.ecosystem = ecosystem;
  credential.issuer_id = issuer.issuer_id();
  credential.credential_type = std::move(credential_type);
  credential.attributes = std::move(attributes);
  credential.expires_at = clock.Now() + validity;
  credential.issuer_key = issuer.key();
  wallet.credentials().push_back(std::move(credential));
  return wallet.credentials().back();
}

const SimCredential* SimWallet::Select(const PresentationRequest& request,
                                       bool need_all_attributes) const {
  const SimCredential* fallback = nullptr;
  for (const auto& c : credentials_) {
    if (c.ecosystem != request.ecosystem ||
        c.credential_type != request.credential_type) {
      continue;
    }
    bool complete = std::all_of(
        request.requested_attributes.begin(),
        request.requested_attributes.end(),
        [&](const std::string& a) { return c.attributes.contains(a); });
    if (need_all_attributes && !complete) continue;
    bool trusted = std::find(request.trusted_issuers.begin(),
                             request.trusted_issuers.end(),
                             c.issuer_id) != request.trusted_issuers.end();
    if (trusted) return &c;
    if (fallback == nullptr) fallback = &c;
  }
  return fallback;
}

Result<Presentation> SimWallet::Respond(const PresentationRequest& request,
                                        Tamper tamper) {
  const SimCredential* credential =
      Select(request, tamper != Tamper::kOmitAttribute);
  if (credential == nullptr) {
    return MakeError(errc::kNoMatchingCredential,
                     "no credential matches the request");
  }

  Presentation p;
  p.ecosystem = credential->ecosystem;
  p.credential_id = credential->credential_id;
  p.credential_type = credential->credential_type;
  p.issuer_id = credential->issuer_id;
  p.credential_expires_at = credential->expires_at;
  for (const auto& name : request.requested_attributes) {
    auto it = credential->attributes.find(name);
    if (it != credential->attributes.end()) p.attributes.emplace(*it);
  }
  p.challenge_nonce_echo = request.challenge_nonce;

  switch (tamper) {
    case Tamper::kNone:
    case Tamper::kForgedSignature:
      break;
    case Tamper::kWrongNonce:
      p.challenge_nonce_echo = NewUuidV4();
      break;
    case Tamper::kOmitAttribute:
      if (!request.requested_attributes.empty()) {
        p.attributes.erase(request.requested_attributes.front());
      }
      break;
    case Tamper::kReusePreviousNonce:
      if (last_nonce_) p.challenge_nonce_echo = *last_nonce_;
      break;
  }

  std::string payload = CanonicalSigningPayload(p);
  if (tamper == Tamper::kForgedSignature) {
    p.holder_signature = Ed25519PrivateKey::Generate().Sign(payload);
  } else {
    p.holder_signature = credential->issuer_key->Sign(payload);
  }
  last_nonce_ = p.challenge_nonce_echo;
  return p;
}

}  // namespace vcbridge
