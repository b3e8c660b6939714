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

#ifndef VCBRIDGE_WALLET_WALLET_SIM_H_
#define VCBRIDGE_WALLET_WALLET_SIM_H_

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vcbridge/common/clock.h"
#include "vcbridge/common/crypto.h"
#include "vcbridge/common/result.h"
#include "vcbridge/verifier/presentation.h"
#include "vcbridge/verifier/verification_result.h"

namespace vcbridge {

enum class Tamper {
  kNone,
  kWrongNonce,
  kForgedSignature,
  kOmitAttribute,
  kReusePreviousNonce,
};

inline constexpr std::array<Tamper, 5> kAllTamperModes = {
    Tamper::kNone, Tamper::kWrongNonce, Tamper::kForgedSignature,
    Tamper::kOmitAttribute, Tamper::kReusePreviousNonce};

std::string_view ToString(Tamper tamper);
std::optional<Tamper> ParseTamper(std::string_view text);

// The failure a tampered presentation is built to trigger; nullopt for kNone.
std::optional<FailureReason> ExpectedFailure(Tamper tamper);

class SimIssuer {
 public:
  // Generates a key pair and registers the public half.
  SimIssuer(std::string issuer_id, IssuerRegistry& registry,
            bool trusted = true);

  const std::string& issuer_id() const { return issuer_id_; }
  std::shared_ptr<const Ed25519PrivateKey> key() const { return key_; }

  void SetTrusted(bool trusted);
  void Revoke(const std::string& credential_id);

 private:
  std::string issuer_id_;
  std::shared_ptr<const Ed25519PrivateKey> key_;
  IssuerRegistry& registry_;
};

struct SimCredential {
  std::string credential_id;
  Ecosystem ecosystem = Ecosystem::kEudi;
  std::string issuer_id;
  std::string credential_type;
  AttributeMap attributes;
  Timestamp expires_at;
  bool revoked = false;
  std::shared_ptr<const Ed25519PrivateKey> issuer_key;
};

class SimWallet {
 public:
  explicit SimWallet(std::string holder_id) : holder_id_(std::move(holder_id)) {}

  const std::string& holder_id() const { return holder_id_; }
  const std::vector<SimCredential>& credentials() const { return credentials_; }
  std::vector<SimCredential>& credentials() { return credentials_; }

  // Builds a presentation for `request`, honest or tampered.
  // kReusePreviousNonce echoes the nonce of this wallet's previous
  // presentation, so answering the same request twice replays its nonce.
  Result<Presentation> Respond(const PresentationRequest& request,
                               Tamper tamper = Tamper::kNone);

 private:
  const SimCredential* Select(const PresentationRequest& request,
                              bool need_all_attributes) const;

  std::string holder_id_;
  std::vector<SimCredential> credentials_;
  std::optional<std::string> last_nonce_;
};

// `validity` of zero yields an already expired credential.
SimCredential& IssueCredential(const SimIssuer& issuer, SimWallet& wallet,
                               Ecosystem ecosystem,
                               std::string credential_type,
                               AttributeMap attributes, Duration validity,
                               const Clock& clock);

// Client mode: fetches the request from <base>/verify/request/<cid>, answers
// it and posts the presentation to <base>/verify/present/<cid>. Returns the
// server's JSON reply.
Result<nlohmann::json> PresentOverHttp(SimWallet& wallet,
                                       const std::string& base_url,
                                       const std::string& correlation_id,
                                       Tamper tamper = Tamper::kNone);

}  // namespace vcbridge

#endif  // VCBRIDGE_WALLET_WALLET_SIM_H_
