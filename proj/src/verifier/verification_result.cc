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

#include "vcbridge/verifier/verification_result.h"

namespace vcbridge {

using nlohmann::json;

std::string_view ToString(Ecosystem ecosystem) {
  switch (ecosystem) {
    case Ecosystem::kAries:
      return "aries";
    case Ecosystem::kEbsi:
      return "ebsi";
    case Ecosystem::kEudi:
      return "eudi";
  }
  return "unknown";
}

std::optional<Ecosystem> ParseEcosystem(std::string_view text) {
  for (Ecosystem e : kAllEcosystems) {
    if (ToString(e) == text) return e;
  }
  return std::nullopt;
}

void to_json(json& j, Ecosystem e) { j = ToString(e); }

void from_json(const json& j, Ecosystem& e) {
  auto parsed = ParseEcosystem(j.get<std::string>());
  if (!parsed) {
    throw json::other_error::create(501, "unknown ecosystem", &j);
  }
  e = *parsed;
}

std::string_view ToString(FailureReason reason) {
  switch (reason) {
    case FailureReason::kBadSignature:
      return "bad_signature";
    case FailureReason::kNonceMismatch:
      return "nonce_mismatch";
    case FailureReason::kNonceReplayed:
      return "nonce_replayed";
    case FailureReason::kUntrustedIssuer:
      return "untrusted_issuer";
    case FailureReason::kExpiredCredential:
      return "expired_credential";
    case FailureReason::kRevoked:
      return "revoked";
    case FailureReason::kMissingAttribute:
      return "missing_attribute";
  }
  return "unknown";
}

std::optional<FailureReason> ParseFailureReason(std::string_view text) {
  for (FailureReason r : kAllFailureReasons) {
    if (ToString(r) == text) return r;
  }
  return std::nullopt;
}

void to_json(json& j, const VerificationResult& r) {
  j = json{{"correlation_id", r.correlation_id},
           {"verified", r.verified},
           {"issuer_id", r.issuer_id}};
  if (r.verified) j["attributes"] = r.attributes;
  if (r.failure_reason) j["failure_reason"] = ToString(*r.failure_reason);
}

void from_json(const json& j, VerificationResult& r) {
  r.correlation_id = j.at("correlation_id").get<std::string>();
  r.verified = j.at("verified").get<bool>();
  r.issuer_id = j.value("issuer_id", "");
  r.attributes.clear();
  if (r.verified) r.attributes = j.at("attributes").get<AttributeMap>();
  r.failure_reason.reset();
  if (j.contains("failure_reason")) {
    r.failure_reason =
        ParseFailureReason(j.at("failure_reason").get<std::string>());
    if (!r.failure_reason) {
      throw json::other_error::create(501, "unknown failure_reason", &j);
    }
  }
}

}  // namespace vcbridge
