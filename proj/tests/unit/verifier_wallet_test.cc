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

#include <set>

#include <gtest/gtest.h>

#include "vcbridge/threats/testbed.h"
#include "vcbridge/verifier/adapter.h"
#include "vcbridge/verifier/verifier_service.h"
#include "vcbridge/wallet/wallet_sim.h"

namespace vcbridge {
namespace {

using nlohmann::json;
using std::chrono::hours;
using std::chrono::minutes;

class VerifierTest : public ::testing::Test {
 protected:
  VerifierTest() {
    static_cast<TemplateSpec&>(tmpl_) = PidTemplateSpec("PID", "government_identity");
    tmpl_.template_id = TemplateId("t1");
    for (Ecosystem e : kAllEcosystems) {
      IssueCredential(issuer_, wallet_, e, kPidCredentialType,
                      Testbed::PidAttributes(), hours(24), clock_);
    }
  }

  VerifierAdapter& Adapter(Ecosystem e) {
    auto& slot = adapters_[e];
    if (!slot) slot = MakeAdapter(e, clock_, store_, issuers_);
    return *slot;
  }

  PresentationRequest Request(Ecosystem e = Ecosystem::kEudi) {
    return Adapter(e).BuildRequest(tmpl_, NewUuidV4()).value();
  }

  VerificationResult Verify(const PresentationRequest& r, Tamper t = Tamper::kNone) {
    return Adapter(r.ecosystem).VerifyPresentation(r, wallet_.Respond(r, t).value());
  }

  ManualClock clock_;
  InMemorySessionStore store_{clock_};
  IssuerRegistry issuers_;
  SimIssuer issuer_{kPidIssuer, issuers_, true};
  SimWallet wallet_{"holder"};
  ProofTemplate tmpl_;
  std::map<Ecosystem, std::unique_ptr<VerifierAdapter>> adapters_;
};

TEST_F(VerifierTest, BuildRequestCopiesConfig) {
  PresentationRequest r = Request();
  const auto& config = tmpl_.ecosystem_configs.at(Ecosystem::kEudi);
  EXPECT_EQ(r.ecosystem, Ecosystem::kEudi);
  EXPECT_EQ(r.requested_attributes, config.requested_attributes);
  EXPECT_EQ(r.trusted_issuers, config.trusted_issuers);
  EXPECT_EQ(r.credential_type, config.credential_type);
  EXPECT_EQ(r.expires_at, clock_.Now() + kChallengeTtl);
  EXPECT_TRUE(store_.Get(Namespace::kChallenge, ChallengeKey(r.challenge_nonce)));
}

TEST_F(VerifierTest, UnconfiguredEcosystem) {
  tmpl_.ecosystem_configs.erase(Ecosystem::kAries);
  auto r = Adapter(Ecosystem::kAries).BuildRequest(tmpl_, NewUuidV4());
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.error().code, errc::kEcosystemUnsupported);
}

TEST_F(VerifierTest, NoncesAreUnique) {
  std::set<std::string> nonces;
  for (int i = 0; i < 10000; ++i) nonces.insert(Request().challenge_nonce);
  EXPECT_EQ(nonces.size(), 10000u);
}

TEST_F(VerifierTest, HonestPresentationVerifies) {
  for (Ecosystem e : kAllEcosystems) {
    PresentationRequest r = Request(e);
    VerificationResult result = Verify(r);
    EXPECT_TRUE(result.verified) << ToString(e);
    EXPECT_EQ(result.correlation_id, r.correlation_id);
    EXPECT_EQ(result.issuer_id, kPidIssuer);
    EXPECT_EQ(result.attributes.size(), r.requested_attributes.size());
    EXPECT_FALSE(result.attributes.contains("nationality"));
  }
}

TEST_F(VerifierTest, SamePresentationTwiceIsReplay) {
  PresentationRequest r = Request();
  Presentation p = wallet_.Respond(r).value();
  EXPECT_TRUE(Adapter(r.ecosystem).VerifyPresentation(r, p).verified);
  VerificationResult second = Adapter(r.ecosystem).VerifyPresentation(r, p);
  EXPECT_FALSE(second.verified);
  EXPECT_EQ(second.failure_reason, FailureReason::kNonceReplayed);
}

TEST_F(VerifierTest, TamperModesProduceTheirFailure) {
  for (Ecosystem e : kAllEcosystems) {
    for (Tamper t : {Tamper::kWrongNonce, Tamper::kForgedSignature,
                     Tamper::kOmitAttribute}) {
      VerificationResult result = Verify(Request(e), t);
      EXPECT_FALSE(result.verified);
      EXPECT_EQ(result.failure_reason, ExpectedFailure(t))
          << ToString(e) << " " << ToString(t);
      EXPECT_TRUE(result.attributes.empty());
    }
  }
}

TEST_F(VerifierTest, ReusePreviousNonceOnSecondUse) {
  PresentationRequest r = Request();
  EXPECT_TRUE(Verify(r).verified);
  VerificationResult replay = Verify(r, Tamper::kReusePreviousNonce);
  EXPECT_EQ(replay.failure_reason, FailureReason::kNonceReplayed);
  EXPECT_EQ(ExpectedFailure(Tamper::kReusePreviousNonce), FailureReason::kNonceReplayed);
  EXPECT_EQ(ExpectedFailure(Tamper::kNone), std::nullopt);
}

TEST_F(VerifierTest, UntrustedIssuer) {
  SimIssuer rogue("did:example:rogue", issuers_, true);
  SimWallet other("other");
  IssueCredential(rogue, other, Ecosystem::kEudi, kPidCredentialType,
                  Testbed::PidAttributes(), hours(1), clock_);
  PresentationRequest r = Request();
  auto result = Adapter(r.ecosystem).VerifyPresentation(r, other.Respond(r).value());
  EXPECT_EQ(result.failure_reason, FailureReason::kUntrustedIssuer);

  issuer_.SetTrusted(false);
  EXPECT_EQ(Verify(Request()).failure_reason, FailureReason::kUntrustedIssuer);
}

TEST_F(VerifierTest, ExpiredCredential) {
  SimWallet other("other");
  IssueCredential(issuer_, other, Ecosystem::kEudi, kPidCredentialType,
                  Testbed::PidAttributes(), Duration::zero(), clock_);
  PresentationRequest r = Request();
  auto result = Adapter(r.ecosystem).VerifyPresentation(r, other.Respond(r).value());
  EXPECT_EQ(result.failure_reason, FailureReason::kExpiredCredential);
}

TEST_F(VerifierTest, RevokedCredential) {
  for (const auto& c : wallet_.credentials()) issuer_.Revoke(c.credential_id);
  EXPECT_EQ(Verify(Request()).failure_reason, FailureReason::kRevoked);
}

TEST_F(VerifierTest, SignatureCoversAttributes) {
  PresentationRequest r = Request();
  Presentation p = wallet_.Respond(r).value();
  p.attributes["given_name"] = "Mallory";
  EXPECT_EQ(Adapter(r.ecosystem).VerifyPresentation(r, p).failure_reason,
            FailureReason::kBadSignature);
}

TEST_F(VerifierTest, WrongCredentialTypeIsMissingAttribute) {
  SimWallet other("other");
  IssueCredential(issuer_, other, Ecosystem::kEudi, "age.1",
                  Testbed::PidAttributes(), hours(1), clock_);
  PresentationRequest r = Request();
  PresentationRequest asked_for_age = r;
  asked_for_age.credential_type = "age.1";
  auto result = Adapter(r.ecosystem)
                    .VerifyPresentation(r, other.Respond(asked_for_age).value());
  EXPECT_EQ(result.failure_reason, FailureReason::kMissingAttribute);
}

TEST_F(VerifierTest, DeepLinkSchemes) {
  EXPECT_EQ(Adapter(Ecosystem::kEudi).deep_link_scheme(), "eudi-openid4vp");
  EXPECT_EQ(Adapter(Ecosystem::kAries).deep_link_scheme(), "didcomm");
  EXPECT_EQ(Adapter(Ecosystem::kEbsi).deep_link_scheme(), "openid4vp");
  PresentationRequest r = Request();
  std::string link = Adapter(Ecosystem::kEudi).DeepLink(r, "https://b/verify/request/x");
  EXPECT_EQ(link.rfind("eudi-openid4vp://?", 0), 0u);
  auto q = ParseQuery(link.substr(link.find('?') + 1));
  EXPECT_EQ(FindParam(*q, "request_uri"), "https://b/verify/request/x");
  EXPECT_EQ(FindParam(*q, "correlation_id"), r.correlation_id);
}

TEST(NormalizeTest, VendorDialects) {
  auto aries = NormalizeResult(
      {{"verified", true}, {"revealed_attrs", {{"documentNumber", {{"raw", "X123"}}}}}},
      Ecosystem::kAries);
  ASSERT_TRUE(aries.ok());
  EXPECT_TRUE(aries->verified);
  EXPECT_EQ(aries->attributes.at("documentNumber"), "X123");

  auto ebsi = NormalizeResult({{"valid", false}}, Ecosystem::kEbsi);
  ASSERT_TRUE(ebsi.ok());
  EXPECT_FALSE(ebsi->verified);

  auto eudi = NormalizeResult(
      {{"proof", {{"status", "VALID"}}}, {"disclosed", {{"a", "b"}}}},
      Ecosystem::kEudi);
  ASSERT_TRUE(eudi.ok());
  EXPECT_TRUE(eudi->verified);

  for (Ecosystem e : kAllEcosystems) {
    auto empty = NormalizeResult(json::object(), e);
    ASSERT_FALSE(empty.ok());
    EXPECT_EQ(empty.error().code, errc::kNormalizationError);
  }
  EXPECT_FALSE(NormalizeResult({{"verified", "yes"}}, Ecosystem::kAries).ok());
  EXPECT_FALSE(NormalizeResult({{"valid", true}}, Ecosystem::kEbsi).ok());
  EXPECT_FALSE(NormalizeResult(json::array(), Ecosystem::kEudi).ok());
}

TEST(NormalizeTest, EncodeDecodeRoundTrip) {
  ManualClock clock;
  InMemorySessionStore store(clock);
  IssuerRegistry issuers;
  VerificationResult ok{"cid", true, {{"a", "1"}}, "iss", std::nullopt};
  VerificationResult bad{"cid", false, {}, "iss", FailureReason::kRevoked};
  for (Ecosystem e : kAllEcosystems) {
    auto adapter = MakeAdapter(e, clock, store, issuers);
    for (const auto& r : {ok, bad}) {
      auto back = adapter->Normalize(adapter->EncodeVendorResult(r));
      ASSERT_TRUE(back.ok());
      EXPECT_EQ(json(*back), json(r)) << ToString(e);
    }
  }
}

TEST_F(VerifierTest, ServiceParksRequestsAndForwardsResults) {
  VerifierService service(clock_, store_, issuers_, "https://bridge");
  std::vector<VerificationResult> forwarded;
  service.set_result_sink([&](const VerificationResult& r) {
    forwarded.push_back(r);
    return OkStatus();
  });
  std::string cid = NewUuidV4();
  auto request = service.StartVerification(tmpl_, Ecosystem::kAries, cid,
                                           clock_.Now() + minutes(5));
  ASSERT_TRUE(request.ok());
  EXPECT_EQ(service.RequestUri(cid), "https://bridge/verify/request/" + cid);
  EXPECT_EQ(service.DeepLink(*request).rfind("didcomm://", 0), 0u);
  auto fetched = service.GetRequest(cid);
  ASSERT_TRUE(fetched.ok());
  EXPECT_EQ(fetched->challenge_nonce, request->challenge_nonce);

  auto outcome = service.SubmitPresentation(cid, wallet_.Respond(*fetched).value());
  ASSERT_TRUE(outcome.ok());
  EXPECT_TRUE(outcome->result.verified);
  EXPECT_TRUE(outcome->accepted);
  ASSERT_EQ(forwarded.size(), 1u);

  EXPECT_EQ(service.GetRequest(NewUuidV4()).error().code, errc::kCorrelationNotFound);
  EXPECT_EQ(service.GetRequest("../etc").error().code, errc::kCorrelationNotFound);
  clock_.Advance(minutes(5));
  EXPECT_EQ(service.GetRequest(cid).error().code, errc::kCorrelationNotFound);
}

TEST_F(VerifierTest, WalletBasics) {
  SimWallet w("w");
  SimCredential& c = IssueCredential(issuer_, w, Ecosystem::kEudi, "t",
                                     {{"documentNumber", "X123"}}, hours(1), clock_);
  EXPECT_EQ(w.credentials().size(), 1u);
  EXPECT_EQ(c.credential_id.rfind("urn:uuid:", 0), 0u);
  EXPECT_EQ(c.expires_at, clock_.Now() + hours(1));
  auto none = w.Respond(Request());
  ASSERT_FALSE(none.ok());
  EXPECT_EQ(none.error().code, errc::kNoMatchingCredential);
}

TEST_F(VerifierTest, WalletDisclosesOnlyRequested) {
  PresentationRequest r = Request();
  Presentation p = wallet_.Respond(r).value();
  EXPECT_EQ(p.attributes.size(), r.requested_attributes.size());
  EXPECT_FALSE(p.attributes.contains("nationality"));
  EXPECT_EQ(p.challenge_nonce_echo, r.challenge_nonce);
  Presentation back = json(p).get<Presentation>();
  EXPECT_EQ(CanonicalSigningPayload(back), CanonicalSigningPayload(p));
  EXPECT_EQ(back.holder_signature, p.holder_signature);
}

TEST(TamperTest, Names) {
  for (Tamper t : kAllTamperModes) EXPECT_EQ(ParseTamper(ToString(t)), t);
  EXPECT_EQ(ToString(Tamper::kReusePreviousNonce), "reuse_previous_nonce");
  EXPECT_FALSE(ParseTamper("bogus").has_value());
}

}  // namespace
}  // namespace vcbridge
