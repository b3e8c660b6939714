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

#ifndef VCBRIDGE_VERIFIER_ADAPTER_H_
#define VCBRIDGE_VERIFIER_ADAPTER_H_

#include <chrono>
#include <memory>
#include <string>
#include <string_view>

#include <json.hpp>

#include "vcbridge/common/clock.h"
#include "vcbridge/common/result.h"
#include "vcbridge/store/session_store.h"
#include "vcbridge/templates/proof_template.h"
#include "vcbridge/verifier/presentation.h"
#include "vcbridge/verifier/verification_result.h"

namespace vcbridge {

// Lifetime of a challenge nonce; matches the authentication token.
inline constexpr Duration kChallengeTtl = std::chrono::minutes(5);

// Session-store key of a live challenge nonce.
std::string ChallengeKey(std::string_view nonce);

// Maps one simulated vendor dialect onto VerificationResult. Either a fully
// populated result or normalization_error; never a partial record.
//   aries: {"verified": bool, "revealed_attrs": {name: {"raw": v}}, ...}
//   ebsi:  {"valid": bool, "credentialSubject": {...}, ...}
//   eudi:  {"proof": {"status": "VALID"|"INVALID", ...}, "disclosed": {...}}
Result<VerificationResult> NormalizeResult(const nlohmann::json& payload,
                                           Ecosystem ecosystem);

// Common interface over the per-ecosystem verifiers. Adding an ecosystem
// means adding a subclass; nothing upstream changes.
class VerifierAdapter {
 public:
  VerifierAdapter(const Clock& clock, SessionStore& store,
                  const IssuerRegistry& issuers)
      : clock_(clock), store_(store), issuers_(issuers) {}
  virtual ~VerifierAdapter() = default;

  virtual Ecosystem ecosystem() const = 0;
  virtual std::string_view deep_link_scheme() const = 0;

  // Renders a normalized outcome in this ecosystem's vendor dialect, as the
  // simulated verifier service would return it.
  virtual nlohmann::json EncodeVendorResult(
      const VerificationResult& result) const = 0;

  Result<VerificationResult> Normalize(const nlohmann::json& payload) const {
    return NormalizeResult(payload, ecosystem());
  }

  // Copies the template's config for this ecosystem and registers a fresh
  // single-use challenge nonce.
  Result<PresentationRequest> BuildRequest(const ProofTemplate& tmpl,
                                           const std::string& correlation_id);

  // Checks, in order: signature, challenge nonce (consumed on match), issuer
  // trust, credential expiry, revocation, requested attributes. The first
  // failing check names the failure_reason.
  VerificationResult VerifyPresentation(const PresentationRequest& request,
                                        const Presentation& presentation);

  // "<scheme>://?correlation_id=..&request_uri=.." for same-device wallets.
  std::string DeepLink(const PresentationRequest& request,
                       std::string_view request_uri) const;

 private:
  VerificationResult Check(const PresentationRequest& request,
                           const Presentation& presentation);

  const Clock& clock_;
  SessionStore& store_;
  const IssuerRegistry& issuers_;
};

// Hyperledger Aries style verifier (ACA-Py dialect, didcomm deep links).
class AriesAdapter final : public VerifierAdapter {
 public:
  using VerifierAdapter::VerifierAdapter;
  Ecosystem ecosystem() const override { return Ecosystem::kAries; }
  std::string_view deep_link_scheme() const override { return "didcomm"; }
  nlohmann::json EncodeVendorResult(
      const VerificationResult& result) const override;
};

// EBSI style verifier ("valid" dialect, openid4vp deep links).
class EbsiAdapter final : public VerifierAdapter {
 public:
  using VerifierAdapter::VerifierAdapter;
  Ecosystem ecosystem() const override { return Ecosystem::kEbsi; }
  std::string_view deep_link_scheme() const override { return "openid4vp"; }
  nlohmann::json EncodeVendorResult(
      const VerificationResult& result) const override;
};

// EUDI wallet style verifier (nested proof status, eudi-openid4vp links).
class EudiAdapter final : public VerifierAdapter {
 public:
  using VerifierAdapter::VerifierAdapter;
  Ecosystem ecosystem() const override { return Ecosystem::kEudi; }
  std::string_view deep_link_scheme() const override {
    return "eudi-openid4vp";
  }
  nlohmann::json EncodeVendorResult(
      const VerificationResult& result) const override;
};

std::unique_ptr<VerifierAdapter> MakeAdapter(Ecosystem ecosystem,
                                             const Clock& clock,
                                             SessionStore& store,
                                             const IssuerRegistry& issuers);

}  // namespace vcbridge

#endif  // VCBRIDGE_VERIFIER_ADAPTER_H_
