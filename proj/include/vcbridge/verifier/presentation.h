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

#ifndef VCBRIDGE_VERIFIER_PRESENTATION_H_
#define VCBRIDGE_VERIFIER_PRESENTATION_H_

#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "vcbridge/common/clock.h"
#include "vcbridge/common/crypto.h"
#include "vcbridge/verifier/verification_result.h"

namespace vcbridge {

// Southbound request handed to a wallet.
struct PresentationRequest {
  std::string correlation_id;
  Ecosystem ecosystem = Ecosystem::kEudi;
  std::string challenge_nonce;
  std::vector<std::string> requested_attributes;
  std::vector<std::string> trusted_issuers;
  std::string credential_type;
  Timestamp expires_at;
};

void to_json(nlohmann::json& j, const PresentationRequest& r);
void from_json(const nlohmann::json& j, PresentationRequest& r);

struct Presentation {
  Ecosystem ecosystem = Ecosystem::kEudi;
  std::string credential_id;  // revocation lookup key
  std::string credential_type;
  std::string issuer_id;
  AttributeMap attributes;
  std::string challenge_nonce_echo;
  Timestamp credential_expires_at;
  std::string holder_signature;  // raw bytes; base64url on the wire
};

void to_json(nlohmann::json& j, const Presentation& p);
void from_json(const nlohmann::json& j, Presentation& p);

// Sorted-key JSON of every field except the signature. This is the exact
// byte string that holder_signature covers.
std::string CanonicalSigningPayload(const Presentation& p);

// Public keys, trust flags and revocations of known issuers. Thread-safe.
class IssuerRegistry {
 public:
  struct Entry {
    Ed25519PublicKey public_key;
    bool trusted = false;
  };

  void Register(const std::string& issuer_id, Ed25519PublicKey key,
                bool trusted);
  void SetTrusted(const std::string& issuer_id, bool trusted);
  void Revoke(const std::string& issuer_id, const std::string& credential_id);

  std::optional<Entry> Find(const std::string& issuer_id) const;
  bool IsRevoked(const std::string& issuer_id,
                 const std::string& credential_id) const;

 private:
  mutable std::shared_mutex mu_;
  std::map<std::string, Entry> issuers_;
  std::set<std::pair<std::string, std::string>> revoked_;
};

}  // namespace vcbridge

#endif  // VCBRIDGE_VERIFIER_PRESENTATION_H_
