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

#ifndef VCBRIDGE_TEMPLATES_TEMPLATE_ENGINE_H_
#define VCBRIDGE_TEMPLATES_TEMPLATE_ENGINE_H_

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vcbridge/common/clock.h"
#include "vcbridge/common/fault_injection.h"
#include "vcbridge/common/result.h"
#include "vcbridge/iam/iam.h"
#include "vcbridge/templates/proof_template.h"
#include "vcbridge/templates/template_store.h"
#include "vcbridge/verifier/verification_result.h"

namespace vcbridge {

enum class SortOrder { kAsc, kDesc };

// Listing parameters, mirroring the admin API query string
// (sortBy, order, limit, page).
struct PageRequest {
  std::string sort_by = "created_at";  // "created_at" or "name"
  SortOrder order = SortOrder::kAsc;
  size_t limit = 20;  // 1..100
  size_t page = 1;    // 1-based
};

struct TemplatePage {
  std::vector<ProofTemplate> items;
  size_t total = 0;
  size_t page = 1;
  size_t limit = 20;
};

// Result of applying a template's claim mapping to verified attributes.
struct MappedClaims {
  std::string sub;
  nlohmann::json custom_claims = nlohmann::json::object();
};

// sub from the template's subject_claim, plus one claim per mapping whose
// source attribute is present. Attributes not named by a mapping are dropped.
Result<MappedClaims> MapClaims(const ProofTemplate& tmpl,
                               const VerificationResult& result);

class TemplateEngine {
 public:
  TemplateEngine(const Clock& clock, const Iam& iam, TemplateStore& store);

  Result<ProofTemplate> CreateTemplate(std::string_view admin_token,
                                       TemplateSpec spec);
  Result<TemplatePage> ListTemplates(std::string_view admin_token,
                                     const PageRequest& page) const;
  // Foreign and missing templates are indistinguishable (unauthorized).
  Result<ProofTemplate> GetTemplate(std::string_view admin_token,
                                    const TemplateId& id) const;

  // Maps an authorization request's scopes to exactly one template owned by
  // the client's tenant. "openid" is ignored.
  Result<ProofTemplate> ResolveScopes(
      const ClientRecord& client,
      const std::vector<std::string>& requested_scopes) const;

  // Server-side lookup by owner, used after a session has pinned a template.
  std::optional<ProofTemplate> FindOwned(const TenantId& tenant,
                                         const TemplateId& id) const;

  void set_fault_injection(const FaultInjection& faults) { faults_ = faults; }

 private:
  const Clock& clock_;
  const Iam& iam_;
  TemplateStore& store_;
  FaultInjection faults_;
};

}  // namespace vcbridge

#endif  // VCBRIDGE_TEMPLATES_TEMPLATE_ENGINE_H_
