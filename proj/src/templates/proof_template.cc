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

#include "vcbridge/templates/proof_template.h"

#include <algorithm>
#include <set>

namespace vcbridge {

using nlohmann::json;

namespace {

bool Contains(const std::vector<std::string>& v, std::string_view s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

bool HasDuplicates(const std::vector<std::string>& v) {
  return std::set<std::string>(v.begin(), v.end()).size() != v.size();
}

Error Invalid(std::string description) {
  return MakeError(errc::kValidationError, std::move(description));
}

}  // namespace

bool IsValidScopeToken(std::string_view scope) {
  if (scope.empty()) return false;
  for (char c : scope) {
    unsigned char u = static_cast<unsigned char>(c);
    bool ok = u == 0x21 || (u >= 0x23 && u <= 0x5b) || (u >= 0x5d && u <= 0x7e);
    if (!ok) return false;
  }
  return true;
}

Status ValidateTemplateSpec(const TemplateSpec& spec) {
  if (spec.name.empty()) return Invalid("name must not be empty");

  for (const auto& scope : spec.scopes) {
    if (!IsValidScopeToken(scope)) return Invalid("invalid scope: " + scope);
    if (scope == kOpenIdScope) {
      return Invalid("the openid scope cannot be bound to a template");
    }
  }
  if (HasDuplicates(spec.scopes)) return Invalid("duplicate scope");

  if (spec.is_auth_only && !spec.subject_claim) {
    return Invalid("auth-only templates require subject_claim");
  }
  if (!spec.scopes.empty() && !spec.subject_claim) {
    return Invalid("templates bound to scopes require subject_claim");
  }
  if (spec.subject_claim && spec.subject_claim->empty()) {
    return Invalid("subject_claim must not be empty");
  }

  std::set<std::string> targets;
  for (const auto& m : spec.claim_mappings) {
    if (m.source_attribute.empty() || m.target_claim.empty()) {
      return Invalid("claim mapping fields must not be empty");
    }
    if (std::find(kReservedClaims.begin(), kReservedClaims.end(),
                  m.target_claim) != kReservedClaims.end()) {
      return Invalid("claim mapping targets reserved claim " + m.target_claim);
    }
    if (!targets.insert(m.target_claim).second) {
      return Invalid("duplicate target claim " + m.target_claim);
    }
  }

  if (spec.ecosystem_configs.empty()) {
    return Invalid("at least one ecosystem config is required");
  }
  for (const auto& [ecosystem, config] : spec.ecosystem_configs) {
    std::string where = " in " + std::string(ToString(ecosystem)) + " config";
    if (config.ecosystem != ecosystem) return Invalid("ecosystem key mismatch");
    if (config.credential_type.empty()) {
      return Invalid("credential_type missing" + where);
    }
    if (config.requested_attributes.empty()) {
      return Invalid("requested_attributes empty" + where);
    }
    if (HasDuplicates(config.requested_attributes)) {
      return Invalid("duplicate requested attribute" + where);
    }
    if (config.trusted_issuers.empty()) {
      return Invalid("trusted_issuers empty" + where);
    }
    if (spec.subject_claim &&
        !Contains(config.requested_attributes, *spec.subject_claim)) {
      return Invalid("subject_claim not requested" + where);
    }
    for (const auto& m : spec.claim_mappings) {
      if (m.required &&
          !Contains(config.requested_attributes, m.source_attribute)) {
        return Invalid("required attribute " + m.source_attribute +
                       " not requested" + where);
      }
    }
  }
  return OkStatus();
}

void to_json(json& j, const ClaimMapping& m) {
  j = json{{"source_attribute", m.source_attribute},
           {"target_claim", m.target_claim},
           {"required", m.required}};
}

void from_json(const json& j, ClaimMapping& m) {
  m.source_attribute = j.at("source_attribute").get<std::string>();
  m.target_claim = j.at("target_claim").get<std::string>();
  m.required = j.value("required", true);
}

void to_json(json& j, const EcosystemConfig& c) {
  j = json{{"ecosystem", c.ecosystem},
           {"requested_attributes", c.requested_attributes},
           {"trusted_issuers", c.trusted_issuers},
           {"credential_type", c.credential_type}};
}

void from_json(const json& j, EcosystemConfig& c) {
  c.ecosystem = j.at("ecosystem").get<Ecosystem>();
  c.requested_attributes =
      j.at("requested_attributes").get<std::vector<std::string>>();
  c.trusted_issuers = j.at("trusted_issuers").get<std::vector<std::string>>();
  c.credential_type = j.at("credential_type").get<std::string>();
}

void to_json(json& j, const TemplateSpec& s) {
  json configs = json::object();
  for (const auto& [ecosystem, config] : s.ecosystem_configs) {
    configs[std::string(ToString(ecosystem))] = config;
  }
  j = json{{"name", s.name},
           {"scopes", s.scopes},
           {"is_auth_only", s.is_auth_only},
           {"claim_mappings", s.claim_mappings},
           {"ecosystem_configs", configs}};
  if (s.subject_claim) j["subject_claim"] = *s.subject_claim;
}

// Ecosystem configs arrive keyed by ecosystem name; the key wins over any
// "ecosystem" member inside the object.
void from_json(const json& j, TemplateSpec& s) {
  s.name = j.at("name").get<std::string>();
  s.scopes = j.value("scopes", std::vector<std::string>{});
  s.is_auth_only = j.value("is_auth_only", false);
  s.subject_claim.reset();
  if (j.contains("subject_claim") && !j["subject_claim"].is_null()) {
    s.subject_claim = j["subject_claim"].get<std::string>();
  }
  s.claim_mappings =
      j.value("claim_mappings", std::vector<ClaimMapping>{});
  s.ecosystem_configs.clear();
  for (const auto& [name, body] : j.at("ecosystem_configs").items()) {
    auto ecosystem = ParseEcosystem(name);
    if (!ecosystem) {
      throw json::other_error::create(501, "unknown ecosystem " + name, &j);
    }
    json with_key = body;
    with_key["ecosystem"] = name;
    s.ecosystem_configs[*ecosystem] = with_key.get<EcosystemConfig>();
  }
}

void to_json(json& j, const ProofTemplate& t) {
  to_json(j, static_cast<const TemplateSpec&>(t));
  j["template_id"] = t.template_id;
  j["tenant_id"] = t.tenant_id;
  j["created_at"] = ToEpochSeconds(t.created_at);
}

void from_json(const json& j, ProofTemplate& t) {
  from_json(j, static_cast<TemplateSpec&>(t));
  t.template_id = j.at("template_id").get<TemplateId>();
  t.tenant_id = j.at("tenant_id").get<TenantId>();
  t.created_at = FromEpochSeconds(j.value("created_at", std::int64_t{0}));
}

}  // namespace vcbridge
