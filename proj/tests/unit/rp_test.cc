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

#include <gtest/gtest.h>

#include "../oracles/sha256_oracle.h"
#include "test_support.h"
#include "vcbridge/common/jwt.h"
#include "vcbridge/rp/relying_party.h"

namespace vcbridge {
namespace {

using nlohmann::json;

QueryParams QueryOfUrl(const std::string& url) {
  return ParseQuery(url.substr(url.find('?') + 1)).value_or(QueryParams{});
}

class RelyingPartyTest : public ::testing::Test {
 protected:
  rp::RelyingParty Discovered() {
    rp::RelyingParty rp(tb_.RpConfigFor(tb_.tenant_a().confidential), tb_.clock());
    EXPECT_TRUE(rp.Discover().ok());
    return rp;
  }

  json Claims() {
    int64_t now = ToEpochSeconds(tb_.clock().Now());
    return {{"iss", tb_.base_url()},
            {"sub", "PID-DE-1234567"},
            {"aud", tb_.tenant_a().confidential.record.client_id.value()},
            {"iat", now},
            {"exp", now + 3600},
            {"nonce", "n-1"}};
  }

  json JwksFor(const RsaPrivateKey& key, const std::string& kid) {
    return {{"keys", json::array({PublicJwk(key.public_key(), kid)})}};
  }

  Testbed tb_;
  RsaPrivateKey key_ = RsaPrivateKey::Generate();
};

TEST_F(RelyingPartyTest, BeginLoginBuildsPkceRequest) {
  auto rp = Discovered();
  auto a = rp.BeginLogin();
  auto b = rp.BeginLogin();
  ASSERT_TRUE(a.ok() && b.ok());
  EXPECT_EQ(a->authorize_url.rfind(tb_.base_url() + "/authorize?", 0), 0u);
  QueryParams q = QueryOfUrl(a->authorize_url);
  EXPECT_EQ(FindParam(q, "response_type"), "code");
  EXPECT_EQ(FindParam(q, "scope"), "openid government_identity");
  EXPECT_EQ(FindParam(q, "code_challenge_method"), "S256");
  EXPECT_EQ(FindParam(q, "code_challenge"), oracle::S256(a->pending.code_verifier));
  EXPECT_EQ(FindParam(q, "state"), a->pending.state);
  EXPECT_EQ(FindParam(q, "nonce"), a->pending.nonce);
  EXPECT_TRUE(IsValidCodeVerifier(a->pending.code_verifier));
  EXPECT_NE(a->pending.state, b->pending.state);
  EXPECT_NE(a->pending.nonce, b->pending.nonce);
  EXPECT_NE(a->pending.code_verifier, b->pending.code_verifier);
  EXPECT_NE(a->pending.state, a->pending.nonce);
}

TEST_F(RelyingPartyTest, HonestLogin) {
  auto claims = tb_.Login(tb_.tenant_a().confidential);
  ASSERT_TRUE(claims.ok()) << claims.error().code << " " << claims.error().description;
  EXPECT_EQ((*claims)["sub"], "PID-DE-1234567");
  EXPECT_EQ((*claims)["document_number"], "X123");
  EXPECT_EQ((*claims)["given_name"], "Erika");
  EXPECT_EQ((*claims)["birthdate"], "1964-08-12");
  EXPECT_FALSE(claims->contains("nationality"));
}

TEST_F(RelyingPartyTest, PublicClientLogin) {
  auto claims = tb_.Login(tb_.tenant_a().public_client);
  ASSERT_TRUE(claims.ok()) << claims.error().code;
  EXPECT_EQ((*claims)["aud"], tb_.tenant_a().public_client.record.client_id.value());
}

TEST_F(RelyingPartyTest, StateMismatchIsCsrf) {
  rp::RpConfig config = tb_.RpConfigFor(tb_.tenant_a().confidential);
  config.issuer_url = "http://127.0.0.1:1";  // never contacted
  rp::RelyingParty rp(config, tb_.clock());
  rp::PendingLogin pending{"expected", "n", RandomToken(32), tb_.clock().Now()};
  auto r = rp.FinishLogin({{"code", "c"}, {"state", "forged"}}, pending);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.error().code, errc::kCsrfDetected);
  r = rp.FinishLogin({{"code", "c"}}, pending);
  EXPECT_EQ(r.error().code, errc::kCsrfDetected);
}

TEST_F(RelyingPartyTest, ErrorCallbackIsSurfaced) {
  auto rp = Discovered();
  rp::PendingLogin pending{"st", "n", RandomToken(32), tb_.clock().Now()};
  auto r = rp.FinishLogin({{"error", "access_denied"}, {"state", "st"}}, pending);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.error().code, "access_denied");
}

TEST_F(RelyingPartyTest, ValidateIdToken) {
  auto rp = Discovered();
  json jwks = JwksFor(key_, "k1");
  auto sign = [&](const json& claims) {
    return SignRs256Jwt({{"kid", "k1"}}, claims, key_);
  };
  EXPECT_TRUE(rp.ValidateIdToken(sign(Claims()), "n-1", jwks).ok());

  auto expect_invalid = [&](const std::string& token, const std::string& nonce) {
    auto r = rp.ValidateIdToken(token, nonce, jwks);
    ASSERT_FALSE(r.ok());
    EXPECT_EQ(r.error().code, errc::kTokenInvalid);
  };
  expect_invalid(sign(Claims()), "n-2");
  json c = Claims();
  c["iss"] = "https://evil.example";
  expect_invalid(sign(c), "n-1");
  c = Claims();
  c["aud"] = "someone-else";
  expect_invalid(sign(c), "n-1");
  c = Claims();
  c["exp"] = ToEpochSeconds(tb_.clock().Now());
  expect_invalid(sign(c), "n-1");
  c = Claims();
  c.erase("sub");
  expect_invalid(sign(c), "n-1");
  expect_invalid("not-a-jwt", "n-1");
}

TEST_F(RelyingPartyTest, WrongKeyUnderKnownKid) {
  auto rp = Discovered();
  RsaPrivateKey attacker = RsaPrivateKey::Generate();
  std::string forged = SignRs256Jwt({{"kid", "k1"}}, Claims(), attacker);
  auto r = rp.ValidateIdToken(forged, "n-1", JwksFor(key_, "k1"));
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.error().code, errc::kTokenInvalid);

  std::string unknown_kid = SignRs256Jwt({{"kid", "k9"}}, Claims(), key_);
  EXPECT_FALSE(rp.ValidateIdToken(unknown_kid, "n-1", JwksFor(key_, "k1")).ok());
}

TEST_F(RelyingPartyTest, RealTokenAgainstPublishedJwks) {
  auto rp = Discovered();
  Bridge& bridge = tb_.system().bridge;
  const auto& client = tb_.tenant_a().confidential;
  auto g = testing::RunToCode(tb_, client);
  ASSERT_TRUE(g.ok());
  auto token = bridge.HandleToken(testing::TokenForm(*g, client), std::nullopt);
  ASSERT_TRUE(token.ok()) << token.error().code;
  auto claims = rp.ValidateIdToken(token->id_token, g->nonce, bridge.Jwks());
  ASSERT_TRUE(claims.ok()) << claims.error().description;
  tb_.clock().Advance(std::chrono::hours(1));
  EXPECT_FALSE(rp.ValidateIdToken(token->id_token, g->nonce, bridge.Jwks()).ok());
}

TEST_F(RelyingPartyTest, DiscoveryIssuerMismatch) {
  rp::RpConfig config = tb_.RpConfigFor(tb_.tenant_a().confidential);
  config.issuer_url = tb_.base_url() + "/";
  rp::RelyingParty rp(config, tb_.clock());
  Status s = rp.Discover();
  ASSERT_FALSE(s.ok());
  EXPECT_EQ(s.error().code, errc::kDiscoveryError);

  config.issuer_url = "http://127.0.0.1:1";
  rp::RelyingParty unreachable(config, tb_.clock());
  EXPECT_EQ(unreachable.BeginLogin().error().code, errc::kDiscoveryError);
}

}  // namespace
}  // namespace vcbridge
