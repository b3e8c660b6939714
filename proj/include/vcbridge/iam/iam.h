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

#ifndef VCBRIDGE_IAM_IAM_H_
#define VCBRIDGE_IAM_IAM_H_

#include <chrono>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "vcbridge/common/clock.h"
#include "vcbridge/common/crypto.h"
#include "vcbridge/common/ids.h"
#include "vcbridge/common/result.h"
#include "vcbridge/templates/template_store.h"

namespace vcbridge {

enum class ClientType { kConfidential, kPublic };
enum class ClientKind { kOidc, kApi };

std::string_view ToString(ClientType type);
std::string_view ToString(ClientKind kind);
std::optional<ClientType> ParseClientType(std::string_view text);
std::optional<ClientKind> ParseClientKind(std::string_view text);

struct Tenant {
  TenantId tenant_id;
  std::string display_name;
  std::string admin_credential_hash;
  Timestamp created_at;
};

struct ClientRecord {
  ClientId client_id;
  ClientType client_type = ClientType::kConfidential;
  std::optional<std::string> client_secret_hash;  // iff confidential
  TenantId tenant_id;
  ClientKind kind = ClientKind::kOidc;
  std::vector<std::string> redirect_uris;
  std::vector<std::string> allowed_scopes;
  Timestamp created_at;
};

// Public view of a client; the secret hash is never serialized.
nlohmann::json ToJson(const ClientRecord& client);

struct AdminToken {
  std::string token;
  TenantId subject_tenant_id;
  Timestamp expires_at;
};

struct ServiceToken {
  std::string token;
  std::string service_name;
  Timestamp expires_at;
};

struct ClientRegistration {
  ClientKind kind = ClientKind::kOidc;
  ClientType client_type = ClientType::kConfidential;
  std::vector<std::string> redirect_uris;
  std::vector<std::string> allowed_scopes;
};

struct RegisteredClient {
  ClientRecord record;
  // Plaintext secret. Present exactly once, in this response, for
  // confidential clients.
  std::optional<std::string> client_secret;
};

struct IamOptions {
  Duration admin_token_ttl = std::chrono::minutes(30);
  Duration service_token_ttl = std::chrono::minutes(5);
  ScryptParams password_hashing;
  size_t min_password_length = 12;
};

// True for "scheme://authority[/path][?query]" with no fragment.
bool IsAbsoluteUri(std::string_view uri);

// Embedded tenant and client registry. Thread-safe.
class Iam {
 public:
  Iam(const Clock& clock, const TemplateStore& templates,
      IamOptions options = {});

  Result<Tenant> RegisterTenant(std::string_view display_name,
                                std::string_view admin_password);

  // Unknown tenant and wrong password fail with the same Error.
  Result<AdminToken> AdminLogin(std::string_view display_name,
                                std::string_view admin_password);

  // Resolves a bearer AdminToken to its tenant, or unauthorized.
  Result<TenantId> AuthenticateAdmin(std::string_view bearer) const;

  Result<RegisteredClient> RegisterClient(
      std::string_view admin_token, const ClientRegistration& registration);
  Result<std::vector<ClientRecord>> ListClients(
      std::string_view admin_token) const;

  // Client authentication. Every failure is the same invalid_client Error.
  Result<ClientRecord> ValidateClient(
      const ClientId& client_id,
      std::optional<std::string_view> presented_secret) const;

  // Lookup without authentication, for the authorization endpoint.
  std::optional<ClientRecord> FindClient(const ClientId& client_id) const;
  std::optional<Tenant> FindTenant(const TenantId& tenant_id) const;

  ServiceToken IssueServiceToken(std::string_view service_name);
  Result<std::string> ValidateServiceToken(std::string_view token) const;

 private:
  struct TokenGrant {
    std::string subject;  // tenant id or service name
    Timestamp expires_at;
  };

  // Bearer tokens are indexed by their SHA-256, not stored in the clear.
  static std::string TokenKey(std::string_view token);

  const Clock& clock_;
  const TemplateStore& templates_;
  IamOptions options_;
  std::string dummy_password_hash_;

  mutable std::shared_mutex mu_;
  std::map<TenantId, Tenant> tenants_;
  std::map<std::string, TenantId, std::less<>> tenants_by_name_;
  std::map<ClientId, ClientRecord> clients_;
  std::unordered_map<std::string, TokenGrant> admin_tokens_;
  std::unordered_map<std::string, TokenGrant> service_tokens_;
};

}  // namespace vcbridge

#endif  // VCBRIDGE_IAM_IAM_H_
