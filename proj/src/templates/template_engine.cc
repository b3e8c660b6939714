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

#include "vcbridge/templates/template_engine.h"

#include <algorithm>

#include "vcbridge/common/crypto.h"

namespace vcbridge {

Result<MappedClaims> MapClaims(const ProofTemplate& tmpl,
                               const VerificationResult& result) {
  if (!result.verified) {
    return MakeError(errc::kClaimsUnsatisfied, "presentation not verified");
  }
  if (!tmpl.subject_claim) {
    return MakeError(errc::kClaimsUnsatisfied, "template has no subject_claim");
  }
  auto subject = result.attributes.find(*tmpl.subject_claim);
  if (subject == result.attributes.end() || subject->second.empty()) {
    return MakeError(errc::kClaimsUnsatisfied,
                     "subject attribute " + *tmpl.subject_claim + " missing");
  }
  MappedClaims out;
  out.sub = subject->second;
  for (const auto& m : tmpl.claim_mappings) {
    auto it = result.attributes.find(m.source_attribute);
    if (it == result.attributes.end()) {
      if (m.required) {
        return MakeError(errc::kClaimsUnsatisfied,
                         "required attribute " + m.source_attribute +
                             " missing");
      }
      continue;
    }
    out.custom_claims[m.target_claim] = it->second;
  }
  return out;
}

TemplateEngine::TemplateEngine(const Clock& clock, const Iam& iam,
                               TemplateStore& store)
    : clock_(clock), iam_(iam), store_(store) {}

Result<ProofTemplate> TemplateEngine::CreateTemplate(
    std::string_view admin_token, TemplateSpec spec) {
  auto tenant = iam_.AuthenticateAdmin(admin_token);
  if (!tenant.ok()) return tenant.error();
  if (auto valid = ValidateTemplateSpec(spec); !valid.ok()) {
    return valid.error();
  }
  ProofTemplate tmpl;
  static_cast<TemplateSpec&>(tmpl) = std::move(spec);
  tmpl.template_id = TemplateId(NewUuidV4());
  tmpl.tenant_id = *tenant;
  tmpl.created_at = clock_.Now();
  if (auto inserted = store_.InsertIfScopesFree(tmpl); !inserted.ok()) {
    return inserted.error();
  }
  return tmpl;
}

Result<TemplatePage> TemplateEngine::ListTemplates(
    std::string_view admin_token, const PageRequest& page) const {
  auto tenant = iam_.AuthenticateAdmin(admin_token);
  if (!tenant.ok()) return tenant.error();
  if (page.sort_by != "created_at" && page.sort_by != "name") {
    return MakeError(errc::kValidationError, "sortBy must be created_at or name");
  }
  if (page.limit < 1 || page.limit > 100 || page.page < 1) {
    return MakeError(errc::kValidationError,
                     "limit must be in 1..100 and page >= 1");
  }

  std::vector<ProofTemplate> all = store_.List(*tenant);
  bool by_name = page.sort_by == "name";
  std::stable_sort(all.begin(), all.end(),
                   [&](const ProofTemplate& a, const ProofTemplate& b) {
                     if (by_name) {
                       if (a.name != b.name) return a.name < b.name;
                     } else if (a.created_at != b.created_at) {
                       return a.created_at < b.created_at;
                     }
                     return a.template_id < b.template_id;
                   });
  if (page.order == SortOrder::kDesc) std::reverse(all.begin(), all.end());

  TemplatePage out;
  out.total = all.size();
  out.page = page.page;
  out.limit = page.limit;
  size_t begin = std::min(all.size(), (page.page - 1) * page.limit);
  size_t end = std::min(all.size(), begin + page.limit);
  out.items.assign(std::make_move_iterator(all.begin() + begin),
                   std::make_move_iterator(all.begin() + end));
  return out;
}

Result<ProofTemplate> TemplateEngine::GetTemplate(std::string_view admin_token,
                                                  const TemplateId& id) const {
  auto tenant = iam_.AuthenticateAdmin(admin_token);
  if (!tenant.ok()) return tenant.error();
  std::optional<ProofTemplate> found;
#ifdef VCBRIDGE_FAULT_INJECTION
  if (faults_.disable_tenant_filter) found = store_.FindIgnoringTenant(id);
  else
#endif
    found = store_.Find(*tenant, id);
  if (!found) {
    return MakeError(errc::kUnauthorized, "template not accessible");
  }
  return *found;
}

Result<ProofTemplate> TemplateEngine::ResolveScopes(
    const ClientRecord& client,
    const std::vector<std::string>& requested_scopes) const {
  std::optional<ProofTemplate> resolved;
  for (const auto& scope : requested_scopes) {
    if (scope == kOpenIdScope) continue;
    if (std::find(client.allowed_scopes.begin(), client.allowed_scopes.end(),
                  scope) == client.allowed_scopes.end()) {
      return MakeError(errc::kInvalidScope,
                       "scope not allowed for this client: " + scope);
    }
    std::optional<ProofTemplate> tmpl =
        store_.FindByScope(client.tenant_id, scope);
    if (!tmpl) {
      return MakeError(errc::kInvalidScope, "unknown scope: " + scope);
    }
    if (resolved && resolved->template_id != tmpl->template_id) {
      return MakeError(errc::kInvalidScope,
                       "scopes resolve to more than one proof template");
    }
    resolved = std::move(tmpl);
  }
  if (!resolved) {
    return MakeError(errc::kInvalidScope,
                     "no credential scope requested besides openid");
  }
  return *resolved;
}

std::optional<ProofTemplate> TemplateEngine::FindOwned(
    const TenantId& tenant, const TemplateId& id) const {
  return store_.Find(tenant, id);
}

}  // namespace vcbridge
