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

#ifndef VCBRIDGE_VERIFIER_VERIFICATION_RESULT_H_
#define VCBRIDGE_VERIFIER_VERIFICATION_RESULT_H_

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

namespace vcbridge {

enum class Ecosystem { kAries, kEbsi, kEudi };

inline constexpr std::array<Ecosystem, 3> kAllEcosystems = {
    Ecosystem::kAries, Ecosystem::kEbsi, Ecosystem::kEudi};

std::string_view ToString(Ecosystem ecosystem);
std::optional<Ecosystem> ParseEcosystem(std::string_view text);

void to_json(nlohmann::json& j, Ecosystem e);
void from_json(const nlohmann::json& j, Ecosystem& e);

enum class FailureReason {
  kBadSignature,
  kNonceMismatch,
  kNonceReplayed,
  kUntrustedIssuer,
  kExpiredCredential,
  kRevoked,
  kMissingAttribute,
};

inline constexpr std::array<FailureReason, 7> kAllFailureReasons = {
    FailureReason::kBadSignature,     FailureReason::kNonceMismatch,
    FailureReason::kNonceReplayed,    FailureReason::kUntrustedIssuer,
    FailureReason::kExpiredCredential, FailureReason::kRevoked,
    FailureReason::kMissingAttribute};

std::string_view ToString(FailureReason reason);
std::optional<FailureReason> ParseFailureReason(std::string_view text);

using AttributeMap = std::map<std::string, std::string>;

// Ecosystem-neutral outcome of checking one presentation.
struct VerificationResult {
  std::string correlation_id;
  bool verified = false;
  AttributeMap attributes;  // empty unless verified
  std::string issuer_id;
  std::optional<FailureReason> failure_reason;
};

void to_json(nlohmann::json& j, const VerificationResult& r);
void from_json(const nlohmann::json& j, VerificationResult& r);

}  // namespace vcbridge

#endif  // VCBRIDGE_VERIFIER_VERIFICATION_RESULT_H_
