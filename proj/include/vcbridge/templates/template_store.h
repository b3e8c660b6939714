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

#ifndef VCBRIDGE_TEMPLATES_TEMPLATE_STORE_H_
#define VCBRIDGE_TEMPLATES_TEMPLATE_STORE_H_

#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string_view>
#include <vector>

#include "vcbridge/common/ids.h"
#include "vcbridge/common/result.h"
#include "vcbridge/templates/proof_template.h"

namespace vcbridge {

// Document store for proof templates. Every query takes the owning tenant as
// a typed argument; there is no way to express an unfiltered read.
class TemplateStore {
 public:
  virtual ~TemplateStore() = default;

  // Inserts `t` unless one of its scopes is already bound within
  // t.tenant_id (scope_conflict). Check and insert are one atomic step.
  virtual Status InsertIfScopesFree(ProofTemplate t) = 0;

  virtual std::optional<ProofTemplate> Find(const TenantId& tenant,
                                            const TemplateId& id) const = 0;
  virtual std::optional<ProofTemplate> FindByScope(
      const TenantId& tenant, std::string_view scope) const = 0;
  virtual std::vector<ProofTemplate> List(const TenantId& tenant) const = 0;

#ifdef VCBRIDGE_FAULT_INJECTION
  // Only reachable when the tenant-filter fault is injected.
  virtual std::optional<ProofTemplate> FindIgnoringTenant(
      const TemplateId& id) const = 0;
#endif
};

class InMemoryTemplateStore final : public TemplateStore {
 public:
  Status InsertIfScopesFree(ProofTemplate t) override;
  std::optional<ProofTemplate> Find(const TenantId& tenant,
                                    const TemplateId& id) const override;
  std::optional<ProofTemplate> FindByScope(
      const TenantId& tenant, std::string_view scope) const override;
  std::vector<ProofTemplate> List(const TenantId& tenant) const override;

#ifdef VCBRIDGE_FAULT_INJECTION
  std::optional<ProofTemplate> FindIgnoringTenant(
      const TemplateId& id) const override;
#endif

 private:
  struct Partition {
    std::map<TemplateId, ProofTemplate> templates;
    std::map<std::string, TemplateId, std::less<>> scope_index;
  };

  mutable std::shared_mutex mu_;
  std::map<TenantId, Partition> partitions_;
};

}  // namespace vcbridge

#endif  // VCBRIDGE_TEMPLATES_TEMPLATE_STORE_H_
