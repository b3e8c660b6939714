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

#include <random>

#include <gtest/gtest.h>

#include "vcbridge/iam/iam.h"
#include "vcbridge/templates/template_engine.h"
#include "vcbridge/templates/template_store.h"
#include "vcbridge/threats/testbed.h"

namespace vcbridge {
namespace {

using nlohmann::json;

constexpr char kPassword[] = "correct-horse-battery-staple";

TemplateSpec GovernmentSpec(std::string name = "gov",
                            std::string scope = "government_identity") {
  TemplateSpec spec;
  spec.name = std::move(name);
  spec.scopes = {std::move(scope)};
  spec.subject_claim = "documentNumber";
  spec.claim_mappings = {{"documentNumber", "document_number", true}};
  EcosystemConfig eudi{Ecosystem::kEudi, {"documentNumber", "givenName"},
                       {"did:example:issuer"}, "eu.europa.ec.eudi.pid.1"};
  spec.ecosystem_configs.emplace(Ecosystem::kEudi, eudi);
  return spec;
}

class IamTest : public ::testing::Test {
 protected:
  IamOptions Cheap() {
    IamOptions o;
    o.password_hashing = {1 << 10, 8, 1};
    return o;
  }

  std::string NewTenant(const std::string& name) {
    EXPECT_TRUE(iam_.RegisterTenant(name, kPassword).ok());
    return iam_.AdminLogin(name, kPassword)->token;
  }

  ManualClock clock_;
  InMemoryTemplateStore store_;
  Iam iam_{clock_, store_, Cheap()};
  TemplateEngine engine_{clock_, iam_, store_};
};

TEST_F(IamTest, RegisterTenantEchoesFields) {
  auto tenant = iam_.RegisterTenant("Acme Bank", kPassword);
  ASSERT_TRUE(tenant.ok());
  EXPECT_EQ(tenant->display_name, "Acme Bank");
  EXPECT_TRUE(IsUuidV4(tenant->tenant_id.value()));
  EXPECT_NE(tenant->admin_credential_hash.find("scrypt$"), std::string::npos);
  EXPECT_EQ(tenant->admin_credential_hash.find(kPassword), std::string::npos);
}

TEST_F(IamTest, RegisterTenantValidation) {
  EXPECT_EQ(iam_.RegisterTenant("", std::string(20, 'x')).error().code,
            errc::kValidationError);
  EXPECT_EQ(iam_.RegisterTenant("Short", "abc").error().code,
            errc::kValidationError);
  ASSERT_TRUE(iam_.RegisterTenant("Dup", kPassword).ok());
  EXPECT_EQ(iam_.RegisterTenant("Dup", kPassword).error().code,
            errc::kRegistrationConflict);
}

TEST_F(IamTest, AdminLogin) {
  auto tenant = iam_.RegisterTenant("Acme", kPassword);
  auto token = iam_.AdminLogin("Acme", kPassword);
  ASSERT_TRUE(token.ok());
  EXPECT_EQ(token->subject_tenant_id, tenant->tenant_id);
  EXPECT_EQ(token->expires_at, clock_.Now() + std::chrono::minutes(30));
  EXPECT_EQ(iam_.AuthenticateAdmin(token->token).value(), tenant->tenant_id);

  auto wrong_password = iam_.AdminLogin("Acme", "wrong-password-123");
  auto unknown_name = iam_.AdminLogin("Nobody", kPassword);
  ASSERT_FALSE(wrong_password.ok());
  EXPECT_EQ(wrong_password.error().code, errc::kUnauthorized);
  EXPECT_EQ(wrong_password.error(), unknown_name.error());
}

TEST_F(IamTest, AdminTokenExpires) {
  std::string token = NewTenant("Acme");
  clock_.Advance(std::chrono::minutes(30));
  EXPECT_EQ(iam_.AuthenticateAdmin(token).error().code, errc::kUnauthorized);
  EXPECT_EQ(iam_.AuthenticateAdmin("").error().code, errc::kUnauthorized);
}

TEST_F(IamTest, RegisterConfidentialAndPublicClients) {
  std::string token = NewTenant("Acme");
  ASSERT_TRUE(engine_.CreateTemplate(token, GovernmentSpec()).ok());
  ClientRegistration reg{ClientKind::kOidc, ClientType::kConfidential,
                         {"https://rp.example/cb"}, {"government_identity"}};
  auto confidential = iam_.RegisterClient(token, reg);
  ASSERT_TRUE(confidential.ok());
  ASSERT_TRUE(confidential->client_secret.has_value());
  EXPECT_GE(confidential->client_secret->size(), 43u);
  ASSERT_TRUE(confidential->record.client_secret_hash.has_value());
  EXPECT_NE(*confidential->record.client_secret_hash, *confidential->client_secret);

  json listed = ToJson(confidential->record);
  EXPECT_FALSE(listed.contains("client_secret_hash"));
  EXPECT_FALSE(listed.contains("client_secret"));

  reg.client_type = ClientType::kPublic;
  auto pub = iam_.RegisterClient(token, reg);
  ASSERT_TRUE(pub.ok());
  EXPECT_FALSE(pub->client_secret.has_value());
  EXPECT_FALSE(pub->record.client_secret_hash.has_value());

  auto listed_clients = iam_.ListClients(token);
  ASSERT_TRUE(listed_clients.ok());
  EXPECT_EQ(listed_clients->size(), 2u);
}

TEST_F(IamTest, RegisterClientValidation) {
  std::string token = NewTenant("Acme");
  ASSERT_TRUE(engine_.CreateTemplate(token, GovernmentSpec()).ok());
  ClientRegistration no_redirect{ClientKind::kOidc, ClientType::kConfidential, {}, {}};
  EXPECT_EQ(iam_.RegisterClient(token, no_redirect).error().code,
            errc::kValidationError);
  ClientRegistration relative{ClientKind::kOidc, ClientType::kPublic, {"/cb"}, {}};
  EXPECT_EQ(iam_.RegisterClient(token, relative).error().code,
            errc::kValidationError);
  ClientRegistration api_with_redirect{ClientKind::kApi, ClientType::kConfidential,
                                       {"https://x/cb"}, {}};
  EXPECT_EQ(iam_.RegisterClient(token, api_with_redirect).error().code,
            errc::kValidationError);
  ClientRegistration api{ClientKind::kApi, ClientType::kConfidential, {}, {}};
  EXPECT_TRUE(iam_.RegisterClient(token, api).ok());
  EXPECT_EQ(iam_.RegisterClient("bogus", api).error().code, errc::kUnauthorized);
}

TEST_F(IamTest, ForeignScopeRejectedAtRegistration) {
  std::string a = NewTenant("A");
  std::string b = NewTenant("B");
  ASSERT_TRUE(engine_.CreateTemplate(b, GovernmentSpec("kyc", "kyc_basic")).ok());
  ClientRegistration reg{ClientKind::kOidc, ClientType::kConfidential,
                         {"https://rp.example/cb"}, {"kyc_basic"}};
  EXPECT_EQ(iam_.RegisterClient(a, reg).error().code, errc::kInvalidScope);
  EXPECT_TRUE(iam_.RegisterClient(b, reg).ok());
}

TEST_F(IamTest, ValidateClient) {
  std::string token = NewTenant("Acme");
  ASSERT_TRUE(engine_.CreateTemplate(token, GovernmentSpec()).ok());
  ClientRegistration reg{ClientKind::kOidc, ClientType::kConfidential,
                         {"https://rp.example/cb"}, {"government_identity"}};
  auto conf = *iam_.RegisterClient(token, reg);
  reg.client_type = ClientType::kPublic;
  auto pub = *iam_.RegisterClient(token, reg);
  const ClientId& cid = conf.record.client_id;

  EXPECT_TRUE(iam_.ValidateClient(cid, *conf.client_secret).ok());
  auto wrong = iam_.ValidateClient(cid, std::string("wrong"));
  auto unknown = iam_.ValidateClient(ClientId("unknown"), *conf.client_secret);
  auto missing = iam_.ValidateClient(cid, std::nullopt);
  auto pub_with_secret = iam_.ValidateClient(pub.record.client_id, std::string("x"));
  for (const auto* r : {&wrong, &unknown, &missing, &pub_with_secret}) {
    ASSERT_FALSE(r->ok());
    EXPECT_EQ(r->error(), wrong.error());
  }
  EXPECT_EQ(wrong.error().code, errc::kInvalidClient);
  EXPECT_TRUE(iam_.ValidateClient(pub.record.client_id, std::nullopt).ok());
}

TEST_F(IamTest, ServiceTokens) {
  ServiceToken token = iam_.IssueServiceToken("verifier");
  EXPECT_EQ(iam_.ValidateServiceToken(token.token).value(), "verifier");
  EXPECT_EQ(iam_.ValidateServiceToken(RandomToken()).error().code,
            errc::kUnauthorized);
  clock_.Advance(std::chrono::minutes(5));
  EXPECT_EQ(iam_.ValidateServiceToken(token.token).error().code,
            errc::kUnauthorized);
}

TEST_F(IamTest, AdminTokenIsNotAServiceToken) {
  std::string admin = NewTenant("Acme");
  EXPECT_FALSE(iam_.ValidateServiceToken(admin).ok());
  EXPECT_FALSE(iam_.AuthenticateAdmin(iam_.IssueServiceToken("v").token).ok());
}

// --- templates -------------------------------------------------------------

TEST_F(IamTest, CreateTemplate) {
  std::string token = NewTenant("Acme");
  auto tmpl = engine_.CreateTemplate(token, GovernmentSpec());
  ASSERT_TRUE(tmpl.ok());
  EXPECT_EQ(tmpl->tenant_id, iam_.AuthenticateAdmin(token).value());
  EXPECT_EQ(tmpl->scopes, std::vector<std::string>{"government_identity"});
  auto fetched = engine_.GetTemplate(token, tmpl->template_id);
  ASSERT_TRUE(fetched.ok());
  EXPECT_EQ(fetched->name, "gov");
}

TEST_F(IamTest, TemplateInvariants) {
  std::string token = NewTenant("Acme");
  TemplateSpec auth_only = GovernmentSpec();
  auth_only.is_auth_only = true;
  auth_only.subject_claim.reset();
  auth_only.scopes.clear();
  EXPECT_EQ(engine_.CreateTemplate(token, auth_only).error().code,
            errc::kValidationError);

  TemplateSpec reserved = GovernmentSpec();
  reserved.claim_mappings.push_back({"givenName", "iss", false});
  EXPECT_EQ(engine_.CreateTemplate(token, reserved).error().code,
            errc::kValidationError);

  TemplateSpec openid = GovernmentSpec();
  openid.scopes = {"openid"};
  EXPECT_EQ(engine_.CreateTemplate(token, openid).error().code,
            errc::kValidationError);

  TemplateSpec unrequested = GovernmentSpec();
  unrequested.claim_mappings.push_back({"birthDate", "birthdate", true});
  EXPECT_EQ(engine_.CreateTemplate(token, unrequested).error().code,
            errc::kValidationError);

  EXPECT_EQ(engine_.CreateTemplate("nope", GovernmentSpec()).error().code,
            errc::kUnauthorized);
}

TEST_F(IamTest, ScopeUniquenessIsPerTenant) {
  std::string a = NewTenant("A");
  std::string b = NewTenant("B");
  ASSERT_TRUE(engine_.CreateTemplate(a, GovernmentSpec("one")).ok());
  EXPECT_EQ(engine_.CreateTemplate(a, GovernmentSpec("two")).error().code,
            errc::kScopeConflict);
  EXPECT_TRUE(engine_.CreateTemplate(b, GovernmentSpec("three")).ok());
}

TEST_F(IamTest, ListTemplatesIsTenantFiltered) {
  std::string a = NewTenant("A");
  std::string b = NewTenant("B");
  std::string empty = NewTenant("C");
  for (int i = 0; i < 2; ++i) {
    ASSERT_TRUE(engine_.CreateTemplate(
        a, GovernmentSpec("a" + std::to_string(i), "sa" + std::to_string(i))).ok());
  }
  for (int i = 0; i < 3; ++i) {
    ASSERT_TRUE(engine_.CreateTemplate(
        b, GovernmentSpec("b" + std::to_string(i), "sb" + std::to_string(i))).ok());
  }
  auto page = engine_.ListTemplates(a, {});
  ASSERT_TRUE(page.ok());
  EXPECT_EQ(page->total, 2u);
  ASSERT_EQ(page->items.size(), 2u);
  for (const auto& t : page->items) EXPECT_EQ(t.name[0], 'a');

  EXPECT_EQ(engine_.ListTemplates("", {}).error().code, errc::kUnauthorized);
  auto none = engine_.ListTemplates(empty, {});
  ASSERT_TRUE(none.ok());
  EXPECT_TRUE(none->items.empty());
}

TEST_F(IamTest, ListTemplatesPagination) {
  std::string a = NewTenant("A");
  for (char c : std::string("cab")) {
    ASSERT_TRUE(engine_.CreateTemplate(
        a, GovernmentSpec(std::string(1, c), std::string("s") + c)).ok());
    clock_.Advance(std::chrono::seconds(1));
  }
  PageRequest by_name{"name", SortOrder::kDesc, 2, 1};
  auto first = *engine_.ListTemplates(a, by_name);
  ASSERT_EQ(first.items.size(), 2u);
  EXPECT_EQ(first.items[0].name, "c");
  EXPECT_EQ(first.items[1].name, "b");
  EXPECT_EQ(first.total, 3u);
  by_name.page = 2;
  auto second = *engine_.ListTemplates(a, by_name);
  ASSERT_EQ(second.items.size(), 1u);
  EXPECT_EQ(second.items[0].name, "a");

  auto by_time = *engine_.ListTemplates(a, {});
  EXPECT_EQ(by_time.items[0].name, "c");

  EXPECT_FALSE(engine_.ListTemplates(a, {"password", SortOrder::kAsc, 20, 1}).ok());
  EXPECT_FALSE(engine_.ListTemplates(a, {"name", SortOrder::kAsc, 0, 1}).ok());
  EXPECT_FALSE(engine_.ListTemplates(a, {"name", SortOrder::kAsc, 101, 1}).ok());
}

TEST_F(IamTest, GetTemplateAcrossTenants) {
  std::string a = NewTenant("A");
  std::string b = NewTenant("B");
  auto tb = *engine_.CreateTemplate(b, GovernmentSpec());
  auto foreign = engine_.GetTemplate(a, tb.template_id);
  auto missing = engine_.GetTemplate(a, TemplateId("does-not-exist"));
  EXPECT_EQ(foreign.error().code, errc::kUnauthorized);
  EXPECT_EQ(foreign.error(), missing.error());
}

TEST_F(IamTest, ResolveScopes) {
  std::string a = NewTenant("A");
  std::string b = NewTenant("B");
  auto gov = *engine_.CreateTemplate(a, GovernmentSpec());
  ASSERT_TRUE(engine_.CreateTemplate(b, GovernmentSpec("kyc", "kyc_basic")).ok());
  ClientRegistration reg{ClientKind::kOidc, ClientType::kConfidential,
                         {"https://rp.example/cb"}, {"government_identity"}};
  auto client = *iam_.RegisterClient(a, reg);

  auto resolved =
      engine_.ResolveScopes(client.record, {"openid", "government_identity"});
  ASSERT_TRUE(resolved.ok());
  EXPECT_EQ(resolved->template_id, gov.template_id);
  EXPECT_EQ(engine_.ResolveScopes(client.record, {"openid"}).error().code,
            errc::kInvalidScope);
  EXPECT_EQ(engine_.ResolveScopes(client.record, {"openid", "kyc_basic"}).error().code,
            errc::kInvalidScope);

  // Even a record that claims the scope cannot reach another tenant's template.
  ClientRecord forged = client.record;
  forged.allowed_scopes.push_back("kyc_basic");
  EXPECT_EQ(engine_.ResolveScopes(forged, {"openid", "kyc_basic"}).error().code,
            errc::kInvalidScope);
}

// Straight-line restatement of the mapping rules, used as the expected value.
json OracleMap(const std::vector<ClaimMapping>& mappings, const AttributeMap& attrs) {
  json out = json::object();
  for (const auto& m : mappings) {
    if (attrs.count(m.source_attribute)) {
      out[m.target_claim] = attrs.at(m.source_attribute);
    }
  }
  return out;
}

TEST(MapClaimsTest, MapsAndDropsExtras) {
  ProofTemplate tmpl;
  static_cast<TemplateSpec&>(tmpl) = GovernmentSpec();
  VerificationResult result{"cid", true, {{"documentNumber", "X123"}, {"extra", "y"}},
                            "did:example:issuer", std::nullopt};
  auto mapped = MapClaims(tmpl, result);
  ASSERT_TRUE(mapped.ok());
  EXPECT_EQ(mapped->sub, "X123");
  EXPECT_EQ(mapped->custom_claims, (json{{"document_number", "X123"}}));
  EXPECT_EQ(mapped->custom_claims, OracleMap(tmpl.claim_mappings, result.attributes));
}

TEST(MapClaimsTest, EmptyMappings) {
  ProofTemplate tmpl;
  static_cast<TemplateSpec&>(tmpl) = GovernmentSpec();
  tmpl.claim_mappings.clear();
  VerificationResult result{"cid", true, {{"documentNumber", "X123"}}, "i",
                            std::nullopt};
  auto mapped = MapClaims(tmpl, result);
  ASSERT_TRUE(mapped.ok());
  EXPECT_EQ(mapped->sub, "X123");
  EXPECT_TRUE(mapped->custom_claims.empty());
}

TEST(MapClaimsTest, MissingRequiredSource) {
  ProofTemplate tmpl;
  static_cast<TemplateSpec&>(tmpl) = GovernmentSpec();
  tmpl.claim_mappings.push_back({"givenName", "given_name", true});
  VerificationResult result{"cid", true, {{"documentNumber", "X123"}}, "i",
                            std::nullopt};
  EXPECT_EQ(MapClaims(tmpl, result).error().code, errc::kClaimsUnsatisfied);
  tmpl.claim_mappings.back().required = false;
  EXPECT_TRUE(MapClaims(tmpl, result).ok());
}

TEST(MapClaimsTest, RandomizedAgainstOracle) {
  std::mt19937 rng(7);
  for (int round = 0; round < 200; ++round) {
    ProofTemplate tmpl;
    tmpl.subject_claim = "id";
    AttributeMap attrs{{"id", "S" + std::to_string(round)}};
    for (int i = 0; i < 6; ++i) {
      std::string src = "a" + std::to_string(i);
      if (rng() % 2) attrs[src] = std::to_string(rng());
      if (rng() % 2) tmpl.claim_mappings.push_back({src, "c" + std::to_string(i), false});
    }
    VerificationResult result{"cid", true, attrs, "i", std::nullopt};
    auto mapped = MapClaims(tmpl, result);
    ASSERT_TRUE(mapped.ok());
    EXPECT_EQ(mapped->sub, attrs["id"]);
    EXPECT_EQ(mapped->custom_claims, OracleMap(tmpl.claim_mappings, attrs));
  }
}

TEST(TemplateJsonTest, RoundTrip) {
  TemplateSpec spec = PidTemplateSpec("PID", "government_identity");
  TemplateSpec back = json(spec).get<TemplateSpec>();
  EXPECT_EQ(json(back), json(spec));
}

}  // namespace
}  // namespace vcbridge
