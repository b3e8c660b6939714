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

#include "vcbridge/iam/iam.h"

#include <mutex>

#include "vcbridge/common/encoding.h"

namespace vcbridge {
namespace {

constexpr std::string_view kSecretHashScheme = "hmac-sha256";

Error Unauthorized() {
  return MakeError(errc::kUnauthorized, "invalid or expired credentials");
}

Error InvalidClient() {
  return MakeError(errc::kInvalidClient, "client authentication failed");
}

std::string HashClientSecret(std::string_view secret) {
  std::string salt = RandomBytes(16);
  return std::string(kSecretHashScheme) + "$" + Base64UrlEncode(salt) + "$" +
         Base64UrlEncode(HmacSha256(salt, secret));
}

bool VerifyClientSecret(std::string_view secret, std::string_view encoded) {
  size_t a = encoded.find('$');
  size_t b = a == std::string_view::npos ? a : encoded.find('$', a + 1);
  if (b == std::string_view::npos || encoded.substr(0, a) != kSecretHashScheme) {
    return false;
  }
  auto salt = Base64UrlDecode(encoded.substr(a + 1, b - a - 1));
  auto expected = Base64UrlDecode(encoded.substr(b + 1));
  if (!salt || !expected) return false;
  return ConstantTimeEquals(HmacSha256(*salt, secret), *expected);
}

}  // namespace

std::string_view ToString(ClientType type) {
  return type == ClientType::kConfidential ? "confidential" : "public";
}

std::string_view ToString(ClientKind kind) {
  return kind == ClientKind::kOidc ? "oidc" : "api";
}

std::optional<ClientType> ParseClientType(std::string_view text) {
  if (text == "confidential") return ClientType::kConfidential;
  if (text == "public") return ClientType::kPublic;
  return std::nullopt;
}

std::optional<ClientKind> ParseClientKind(std::string_view text) {
  if (text == "oidc") return ClientKind::kOidc;
  if (text == "api") return ClientKind::kApi;
  return std::nullopt;
}

nlohmann::json ToJson(const ClientRecord& client) {
  return nlohmann::json{{"client_id", client.client_id},
                        {"client_type", ToString(client.client_type)},
                        {"tenant_id", client.tenant_id},
                        {"kind", ToString(client.kind)},
                        {"redirect_uris", client.redirect_uris},
                        {"allowed_scopes", client.allowed_scopes},
                        {"created_at", ToEpochSeconds(client.created_at)}};
}

bool IsAbsoluteUri(std::string_view uri) {
  size_t colon = uri.find("://");
  if (colon == std::string_view::npos || colon == 0) return false;
  auto is_alpha = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  };
  if (!is_alpha(uri[0])) return false;
  for (char c : uri.substr(0, colon)) {
    if (!is_alpha(c) && !(c >= '0' && c <= '9') && c != '+' && c != '-' &&
        c != '.') {
      return false;
    }
  }
  std::string_view rest = uri.substr(colon + 3);
  size_t end = rest.find_first_of("/?");
  if (rest.substr(0, end).empty()) return false;
  for (char c : uri) {
    if (c == '#' || static_cast<unsigned char>(c) <= 0x20) return false;
  }
  return true;
}

Iam::Iam(const Clock& clock, const TemplateStore& templates,
         IamOptions options)
    : clock_(clock),
      templates_(templates),
      options_(std::move(options)),
      dummy_password_hash_(
          HashPassword(RandomToken(16), options_.password_hashing)) {}

std::string Iam::TokenKey(std::string_view token) { return Sha256(token); }

Result<Tenant> Iam::RegisterTenant(std::string_view display_name,
                                   std::string_view admin_password) {
  if (display_name.empty()) {
    return MakeError(errc::kValidationError, "display_name must not be empty");
  }
  if (admin_password.size() < options_.min_password_length) {
    return MakeError(errc::kValidationError,
                     "admin password must be at least " +
                         std::to_string(options_.min_password_length) +
                         " characters");
  }
  Tenant tenant{TenantId(NewUuidV4()), std::string(display_name),
                HashPassword(admin_password, options_.password_hashing),
                clock_.Now()};

  std::unique_lock lock(mu_);
  if (tenants_by_name_.contains(display_name)) {
    return MakeError(errc::kRegistrationConflict,
                     "a tenant with this display name already exists");
  }
  while (tenants_.contains(tenant.tenant_id)) {
    tenant.tenant_id = TenantId(NewUuidV4());
  }
  tenants_by_name_.emplace(tenant.display_name, tenant.tenant_id);
  tenants_.emplace(tenant.tenant_id, tenant);
  return tenant;
}

Result<AdminToken> Iam::AdminLogin(std::string_view display_name,
                                   std::string_view admin_password) {
  std::optional<Tenant> tenant;
  {
    std::shared_lock lock(mu_);
    auto it = tenants_by_name_.find(display_name);
    if (it != tenants_by_name_.end()) tenant = tenants_.at(it->second);
  }
  // Unknown names still pay for one hash so timing does not enumerate
  // tenants.
  bool ok = VerifyPassword(admin_password, tenant
                                               ? tenant->admin_credential_hash
                                               : dummy_password_hash_);
  if (!tenant || !ok) return Unauthorized();

  AdminToken token{RandomToken(32), tenant->tenant_id,
                   clock_.Now() + options_.admin_token_ttl};
  std::unique_lock lock(mu_);
  std::erase_if(admin_tokens_, [now = clock_.Now()](const auto& kv) {
    return now >= kv.second.expires_at;
  });
  admin_tokens_.insert_or_assign(
      TokenKey(token.token),
      TokenGrant{tenant->tenant_id.value(), token.expires_at});
  return token;
}

Result<TenantId> Iam::AuthenticateAdmin(std::string_view bearer) const {
  if (bearer.empty()) return Unauthorized();
  Timestamp now = clock_.Now();
  std::shared_lock lock(mu_);
  auto it = admin_tokens_.find(TokenKey(bearer));
  if (it == admin_tokens_.end() || now >= it->second.expires_at) {
    return Unauthorized();
  }
  return TenantId(it->second.subject);
}

Result<RegisteredClient> Iam::RegisterClient(
    std::string_view admin_token, const ClientRegistration& registration) {
  auto tenant = AuthenticateAdmin(admin_token);
  if (!tenant.ok()) return tenant.error();

  if (registration.kind == ClientKind::kOidc) {
    if (registration.redirect_uris.empty()) {
      return MakeError(errc::kValidationError,
                       "oidc clients need at least one redirect_uri");
    }
    for (const auto& uri : registration.redirect_uris) {
      if (!IsAbsoluteUri(uri)) {
        return MakeError(errc::kValidationError,
                         "redirect_uri is not an absolute URI: " + uri);
      }
    }
  } else if (!registration.redirect_uris.empty()) {
    return MakeError(errc::kValidationError,
                     "api clients cannot have redirect_uris");
  }
  for (const auto& scope : registration.allowed_scopes) {
    if (!templates_.FindByScope(*tenant, scope)) {
      return MakeError(errc::kInvalidScope,
                       "scope is not defined by this tenant: " + scope);
    }
  }

  RegisteredClient out;
  out.record.client_type = registration.client_type;
  out.record.tenant_id = *tenant;
  out.record.kind = registration.kind;
  out.record.redirect_uris = registration.redirect_uris;
  out.record.allowed_scopes = registration.allowed_scopes;
  out.record.created_at = clock_.Now();
  if (registration.client_type == ClientType::kConfidential) {
    out.client_secret = RandomToken(32);
    out.record.client_secret_hash = HashClientSecret(*out.client_secret);
  }

  std::unique_lock lock(mu_);
  do {
    out.record.client_id = ClientId(RandomToken(18));
  } while (clients_.contains(out.record.client_id));
  clients_.emplace(out.record.client_id, out.record);
  return out;
}

Result<std::vector<ClientRecord>> Iam::ListClients(
    std::string_view admin_token) const {
  auto tenant = AuthenticateAdmin(admin_token);
  if (!tenant.ok()) return tenant.error();
  std::vector<ClientRecord> out;
  std::shared_lock lock(mu_);
  for (const auto& [id, client] : clients_) {
    if (client.tenant_id == *tenant) out.push_back(client);
  }
  return out;
}

Result<ClientRecord> Iam::ValidateClient(
    const ClientId& client_id,
    std::optional<std::string_view> presented_secret) const {
  std::optional<ClientRecord> client = FindClient(client_id);
  if (!client) {
    if (presented_secret) {
      // Same work as a real comparison.
      VerifyClientSecret(*presented_secret,
                         "hmac-sha256$AAAAAAAAAAAAAAAAAAAAAA$"
                         "AAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAA");
    }
    return InvalidClient();
  }
  if (client->client_type == ClientType::kPublic) {
    if (presented_secret) return InvalidClient();
    return *client;
  }
  if (!presented_secret || !client->client_secret_hash ||
      !VerifyClientSecret(*presented_secret, *client->client_secret_hash)) {
    return InvalidClient();
  }
  return *client;
}

std::optional<ClientRecord> Iam::FindClient(const ClientId& client_id) const {
  std::shared_lock lock(mu_);
  auto it = clients_.find(client_id);
  if (it == clients_.end()) return std::nullopt;
  return it->second;
}

std::optional<Tenant> Iam::FindTenant(const TenantId& tenant_id) const {
  std::shared_lock lock(mu_);
  auto it = tenants_.find(tenant_id);
  if (it == tenants_.end()) return std::nullopt;
  return it->second;
}

ServiceToken Iam::IssueServiceToken(std::string_view service_name) {
  ServiceToken token{RandomToken(32), std::string(service_name),
                     clock_.Now() + options_.service_token_ttl};
  std::unique_lock lock(mu_);
  std::erase_if(service_tokens_, [now = clock_.Now()](const auto& kv) {
    return now >= kv.second.expires_at;
  });
  service_tokens_.insert_or_assign(
      TokenKey(token.token), TokenGrant{token.service_name, token.expires_at});
  return token;
}

Result<std::string> Iam::ValidateServiceToken(std::string_view token) const {
  if (token.empty()) return Unauthorized();
  Timestamp now = clock_.Now();
  std::shared_lock lock(mu_);
  auto it = service_tokens_.find(TokenKey(token));
  if (it == service_tokens_.end() || now >= it->second.expires_at) {
    return Unauthorized();
  }
  return it->second.subject;
}

}  // namespace vcbridge
