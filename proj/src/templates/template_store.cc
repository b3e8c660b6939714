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

#include "vcbridge/templates/template_store.h"

namespace vcbridge {

Status InMemoryTemplateStore::InsertIfScopesFree(ProofTemplate t) {
  std::unique_lock lock(mu_);
  Partition& part = partitions_[t.tenant_id];
  for (const auto& scope : t.scopes) {
    if (part.scope_index.contains(scope)) {
      return MakeError(errc::kScopeConflict,
                       "scope " + scope + " is already bound in this tenant");
    }
  }
  if (part.templates.contains(t.template_id)) {
    return MakeError(errc::kValidationError, "duplicate template id");
  }
  for (const auto& scope : t.scopes) {
    part.scope_index.emplace(scope, t.template_id);
  }
  TemplateId id = t.template_id;
  part.templates.emplace(std::move(id), std::move(t));
  return OkStatus();
}

std::optional<ProofTemplate> InMemoryTemplateStore::Find(
    const TenantId& tenant, const TemplateId& id) const {
  std::shared_lock lock(mu_);
  auto part = partitions_.find(tenant);
  if (part == partitions_.end()) return std::nullopt;
  auto it = part->second.templates.find(id);
  if (it == part->second.templates.end()) return std::nullopt;
  return it->second;
}

std::optional<ProofTemplate> InMemoryTemplateStore::FindByScope(
    const TenantId& tenant, std::string_view scope) const {
  std::shared_lock lock(mu_);
  auto part = partitions_.find(tenant);
  if (part == partitions_.end()) return std::nullopt;
  auto idx = part->second.scope_index.find(scope);
  if (idx == part->second.scope_index.end()) return std::nullopt;
  return part->second.templates.at(idx->second);
}

std::vector<ProofTemplate> InMemoryTemplateStore::List(
    const TenantId& tenant) const {
  std::shared_lock lock(mu_);
  std::vector<ProofTemplate> out;
  auto part = partitions_.find(tenant);
  if (part == partitions_.end()) return out;
  out.reserve(part->second.templates.size());
  for (const auto& [id, t] : part->second.templates) out.push_back(t);
  return out;
}

#ifdef VCBRIDGE_FAULT_INJECTION
std::optional<ProofTemplate> InMemoryTemplateStore::FindIgnoringTenant(
    const TemplateId& id) const {
  std::shared_lock lock(mu_);
  for (const auto& [tenant, part] : partitions_) {
    auto it = part.templates.find(id);
    if (it != part.templates.end()) return it->second;
  }
  return std::nullopt;
}
#endif

}  // namespace vcbridge
