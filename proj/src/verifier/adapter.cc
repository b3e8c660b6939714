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

#include "vcbridge/verifier/adapter.h"

#include <algorithm>
#include <stdexcept>

#include "vcbridge/common/crypto.h"
#include "vcbridge/common/encoding.h"

namespace vcbridge {

using nlohmann::json;

namespace {

Error NormalizationError(std::string description) {
  return MakeError(errc::kNormalizationError, std::move(description));
}

// Reads a flat {name: string} object. Aries wraps each value as {"raw": v}.
Result<AttributeMap> ReadAttributes(const json& j, bool raw_wrapped) {
  if (!j.is_object()) return NormalizationError("attributes not an object");
  AttributeMap out;
  for (const auto& [name, value] : j.items()) {
    const json* v = &value;
    if (raw_wrapped && value.is_object()) {
      auto raw = value.find("raw");
      if (raw == value.end()) {
        return NormalizationError("revealed attribute without raw value");
      }
      v = &*raw;
    }
    if (!v->is_string()) {
      return NormalizationError("attribute " + name + " is not a string");
    }
    out.emplace(name, v->get<std::string>());
  }
  return out;
}

std::string OptionalString(const json& j, const char* key) {
  auto it = j.find(key);
  return it != j.end() && it->is_string() ? it->get<std::string>() : "";
}

std::optional<FailureReason> OptionalReason(const json& j) {
  return j.is_string() ? ParseFailureReason(j.get<std::string>())
                       : std::nullopt;
}

Result<VerificationResult> NormalizeAries(const json& p) {
  auto verified = p.find("verified");
  if (verified == p.end() || !verified->is_boolean()) {
    return NormalizationError("aries payload lacks boolean 'verified'");
  }
  VerificationResult r;
  r.verified = verified->get<bool>();
  r.correlation_id = OptionalString(p, "thread_id");
  r.issuer_id = OptionalString(p, "issuer_did");
  if (r.verified) {
    auto attrs = p.find("revealed_attrs");
    if (attrs == p.end()) return NormalizationError("missing revealed_attrs");
    auto parsed = ReadAttributes(*attrs, true);
    if (!parsed.ok()) return parsed.error();
    r.attributes = std::move(*parsed);
  } else if (auto it = p.find("error_msg"); it != p.end()) {
    r.failure_reason = OptionalReason(*it);
  }
  return r;
}

Result<VerificationResult> NormalizeEbsi(const json& p) {
  auto valid = p.find("valid");
  if (valid == p.end() || !valid->is_boolean()) {
    return NormalizationError("ebsi payload lacks boolean 'valid'");
  }
  VerificationResult r;
  r.verified = valid->get<bool>();
  r.correlation_id = OptionalString(p, "correlationId");
  r.issuer_id = OptionalString(p, "issuer");
  if (r.verified) {
    auto subject = p.find("credentialSubject");
    if (subject == p.end()) {
      return NormalizationError("missing credentialSubject");
    }
    auto parsed = ReadAttributes(*subject, false);
    if (!parsed.ok()) return parsed.error();
    r.attributes = std::move(*parsed);
  } else if (auto it = p.find("errors");
             it != p.end() && it->is_array() && !it->empty()) {
    r.failure_reason = OptionalReason(it->front());
  }
  return r;
}

Result<VerificationResult> NormalizeEudi(const json& p) {
  auto proof = p.find("proof");
  if (proof == p.end() || !proof->is_object()) {
    return NormalizationError("eudi payload lacks proof object");
  }
  auto status = proof->find("status");
  if (status == proof->end() || !status->is_string() ||
      (*status != "VALID" && *status != "INVALID")) {
    return NormalizationError("eudi proof.status must be VALID or INVALID");
  }
  VerificationResult r;
  r.verified = *status == "VALID";
  r.correlation_id = OptionalString(p, "transaction_id");
  r.issuer_id = OptionalString(p, "issuer");
  if (r.verified) {
    auto disclosed = p.find("disclosed");
    if (disclosed == p.end()) return NormalizationError("missing disclosed");
    auto parsed = ReadAttributes(*disclosed, false);
    if (!parsed.ok()) return parsed.error();
    r.attributes = std::move(*parsed);
  } else if (auto it = proof->find("reason"); it != proof->end()) {
    r.failure_reason = OptionalReason(*it);
  }
  return r;
}

VerificationResult Fail(const PresentationRequest& request,
                        const Presentation& presentation,
                        FailureReason reason) {
  VerificationResult r;
  r.correlation_id = request.correlation_id;
  r.issuer_id = presentation.issuer_id;
  r.failure_reason = reason;
  return r;
}

bool Contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

std::string ChallengeKey(std::string_view nonce) {
  return "nonce:" + std::string(nonce);
}

Result<VerificationResult> NormalizeResult(const json& payload,
                                           Ecosystem ecosystem) {
  if (!payload.is_object()) return NormalizationError("payload not an object");
  switch (ecosystem) {
    case Ecosystem::kAries:
      return NormalizeAries(payload);
    case Ecosystem::kEbsi:
      return NormalizeEbsi(payload);
    case Ecosystem::kEudi:
      return NormalizeEudi(payload);
  }
  return NormalizationError("unknown dialect");
}

Result<PresentationRequest> VerifierAdapter::BuildRequest(
    const ProofTemplate& tmpl, const std::string& correlation_id) {
  auto config = tmpl.ecosystem_configs.find(ecosystem());
  if (config == tmpl.ecosystem_configs.end()) {
    return MakeError(errc::kEcosystemUnsupported,
                     "template has no " + std::string(ToString(ecosystem())) +
                         " configuration");
  }
  PresentationRequest request;
  request.correlation_id = correlation_id;
  request.ecosystem = ecosystem();
  request.challenge_nonce = NewUuidV4();
  request.requested_attributes = config->second.requested_attributes;
  request.trusted_issuers = config->second.trusted_issuers;
  request.credential_type = config->second.credential_type;
  request.expires_at = clock_.Now() + kChallengeTtl;
  store_.Put(Namespace::kChallenge, ChallengeKey(request.challenge_nonce),
             correlation_id, kChallengeTtl);
  return request;
}

VerificationResult VerifierAdapter::Check(const PresentationRequest& request,
                                          const Presentation& presentation) {
  auto issuer = issuers_.Find(presentation.issuer_id);
  if (!issuer || !issuer->public_key.Verify(
                     CanonicalSigningPayload(presentation),
                     presentation.holder_signature)) {
    return Fail(request, presentation, FailureReason::kBadSignature);
  }
  if (!ConstantTimeEquals(presentation.challenge_nonce_echo,
                          request.challenge_nonce)) {
    return Fail(request, presentation, FailureReason::kNonceMismatch);
  }
  if (!store_.Take(Namespace::kChallenge,
                   ChallengeKey(presentation.challenge_nonce_echo))) {
    return Fail(request, presentation, FailureReason::kNonceReplayed);
  }
  if (!issuer->trusted ||
      !Contains(request.trusted_issuers, presentation.issuer_id)) {
    return Fail(request, presentation, FailureReason::kUntrustedIssuer);
  }
  if (clock_.Now() >= presentation.credential_expires_at) {
    return Fail(request, presentation, FailureReason::kExpiredCredential);
  }
  if (issuers_.IsRevoked(presentation.issuer_id, presentation.credential_id)) {
    return Fail(request, presentation, FailureReason::kRevoked);
  }
  // A credential of another type or ecosystem cannot supply what was asked.
  if (presentation.ecosystem != request.ecosystem ||
      presentation.credential_type != request.credential_type) {
    return Fail(request, presentation, FailureReason::kMissingAttribute);
  }
  for (const auto& name : request.requested_attributes) {
    if (!presentation.attributes.contains(name)) {
      return Fail(request, presentation, FailureReason::kMissingAttribute);
    }
  }

  VerificationResult r;
  r.correlation_id = request.correlation_id;
  r.verified = true;
  r.issuer_id = presentation.issuer_id;
  for (const auto& name : request.requested_attributes) {
    r.attributes.emplace(name, presentation.attributes.at(name));
  }
  return r;
}

VerificationResult VerifierAdapter::VerifyPresentation(
    const PresentationRequest& request, const Presentation& presentation) {
  // The result travels through the vendor dialect and back, as it would
  // when a separate verifier service answers.
  json vendor = EncodeVendorResult(Check(request, presentation));
  auto normalized = Normalize(vendor);
  if (!normalized.ok()) {
    throw std::logic_error("adapter produced an unparseable vendor payload");
  }
  return std::move(normalized).value();
}

std::string VerifierAdapter::DeepLink(const PresentationRequest& request,
                                      std::string_view request_uri) const {
  return std::string(deep_link_scheme()) + "://?" +
         BuildQuery({{"correlation_id", request.correlation_id},
                     {"request_uri", std::string(request_uri)}});
}

json AriesAdapter::EncodeVendorResult(const VerificationResult& r) const {
  json out{{"verified", r.verified},
           {"thread_id", r.correlation_id},
           {"issuer_did", r.issuer_id},
           {"state", r.verified ? "verified" : "abandoned"}};
  if (r.verified) {
    json attrs = json::object();
    for (const auto& [name, value] : r.attributes) {
      attrs[name] = json{{"raw", value}};
    }
    out["revealed_attrs"] = attrs;
  } else if (r.failure_reason) {
    out["error_msg"] = ToString(*r.failure_reason);
  }
  return out;
}

json EbsiAdapter::EncodeVendorResult(const VerificationResult& r) const {
  json out{{"valid", r.verified},
           {"correlationId", r.correlation_id},
           {"issuer", r.issuer_id}};
  if (r.verified) {
    out["credentialSubject"] = r.attributes;
  } else {
    out["errors"] = json::array();
    if (r.failure_reason) out["errors"].push_back(ToString(*r.failure_reason));
  }
  return out;
}

json EudiAdapter::EncodeVendorResult(const VerificationResult& r) const {
  json proof{{"status", r.verified ? "VALID" : "INVALID"}};
  if (!r.verified && r.failure_reason) {
    proof["reason"] = ToString(*r.failure_reason);
  }
  json out{{"proof", proof},
           {"transaction_id", r.correlation_id},
           {"issuer", r.issuer_id}};
  if (r.verified) out["disclosed"] = r.attributes;
  return out;
}

std::unique_ptr<VerifierAdapter> MakeAdapter(Ecosystem ecosystem,
                                             const Clock& clock,
                                             SessionStore& store,
                                             const IssuerRegistry& issuers) {
  switch (ecosystem) {
    case Ecosystem::kAries:
      return std::make_unique<AriesAdapter>(clock, store, issuers);
    case Ecosystem::kEbsi:
      return std::make_unique<EbsiAdapter>(clock, store, issuers);
    case Ecosystem::kEudi:
      return std::make_unique<EudiAdapter>(clock, store, issuers);
  }
  return nullptr;
}

}  // namespace vcbridge
