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

#ifndef VCBRIDGE_TEMPLATES_PROOF_TEMPLATE_H_
#define VCBRIDGE_TEMPLATES_PROOF_TEMPLATE_H_

#include <map>
#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vcbridge/common/clock.h"
#include "vcbridge/common/ids.h"
#include "vcbridge/common/result.h"
#include "vcbridge/verifier/verification_result.h"

namespace vcbridge {

// The standard OIDC scope; never bound to a template.
inline constexpr std::string_view kOpenIdScope = "openid";

// Claims the bridge sets itself. Mappings may not target them.
inline constexpr std::array<std::string_view, 6> kReservedClaims = {
    "iss", "aud", "exp", "iat", "nonce", "sub"};

struct ClaimMapping {
  std::string source_attribute;
  std::string target_claim;
  bool required = true;
};

struct EcosystemConfig {
  Ecosystem ecosystem = Ecosystem::kEudi;
  std::vector<std::string> requested_attributes;
  std::vector<std::string> trusted_issuers;
  std::string credential_type;
};

// What an administrator submits.
struct TemplateSpec {
  std::string name;
  std::vector<std::string> scopes;
  bool is_auth_only = false;
  // Attribute whose value becomes the ID Token `sub`. Mandatory for any
  // template reachable through a scope.
  std::optional<std::string> subject_claim;
  std::vector<ClaimMapping> claim_mappings;
  std::map<Ecosystem, EcosystemConfig> ecosystem_configs;
};

// A stored template. `tenant_id` is set from the authenticated admin, never
// from request input.
struct ProofTemplate : TemplateSpec {
  TemplateId template_id;
  TenantId tenant_id;
  Timestamp created_at;
};

// RFC 6749 scope-token syntax.
bool IsValidScopeToken(std::string_view scope);

// Checks every structural invariant of a template spec.
Status ValidateTemplateSpec(const TemplateSpec& spec);

void to_json(nlohmann::json& j, const ClaimMapping& m);
void from_json(const nlohmann::json& j, ClaimMapping& m);
void to_json(nlohmann::json& j, const EcosystemConfig& c);
void from_json(const nlohmann::json& j, EcosystemConfig& c);
void to_json(nlohmann::json& j, const TemplateSpec& s);
void from_json(const nlohmann::json& j, TemplateSpec& s);
void to_json(nlohmann::json& j, const ProofTemplate& t);
void from_json(const nlohmann::json& j, ProofTemplate& t);

}  // namespace vcbridge

#endif  // VCBRIDGE_TEMPLATES_PROOF_TEMPLATE_H_
