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

#ifndef VCBRIDGE_THREATS_TESTBED_H_
#define VCBRIDGE_THREATS_TESTBED_H_

#include <memory>
#include <optional>
#include <string>

#include "vcbridge/common/clock.h"
#include "vcbridge/common/encoding.h"
#include "vcbridge/common/fault_injection.h"
#include "vcbridge/common/result.h"
#include "vcbridge/rp/relying_party.h"
#include "vcbridge/server/http_api.h"
#include "vcbridge/server/system.h"
#include "vcbridge/wallet/wallet_sim.h"

namespace vcbridge {

inline constexpr char kGovernmentScope[] = "government_identity";
inline constexpr char kKycScope[] = "kyc_basic";
inline constexpr char kPidCredentialType[] = "eu.europa.ec.eudi.pid.1";
inline constexpr char kPidIssuer[] = "did:example:pid-authority";

struct TestbedOptions {
  FaultInjection faults;
  // Cheap password hashing; the testbed creates tenants on every run.
  ScryptParams password_hashing{1 << 10, 8, 1};
};

// A complete deployment on a loopback port with a mock clock: two tenants,
// each with a template, a confidential and a public client, plus a trusted
// PID issuer and a wallet holding one PID credential per ecosystem.
class Testbed {
 public:
  struct TenantFixture {
    Tenant tenant;
    std::string admin_token;
    ProofTemplate tmpl;
    RegisteredClient confidential;
    RegisteredClient public_client;
  };

  struct UserAgentRun {
    std::string session_id;
    std::string correlation_id;
    std::string cookie;  // Set-Cookie value from /authorize
    nlohmann::json presentation_reply;
    QueryParams callback;  // what the RP's redirect_uri receives
  };

  explicit Testbed(TestbedOptions options = {});
  ~Testbed();

  Testbed(const Testbed&) = delete;
  Testbed& operator=(const Testbed&) = delete;

  ManualClock& clock() { return clock_; }
  System& system() { return *system_; }
  const std::string& base_url() const { return base_url_; }

  TenantFixture& tenant_a() { return tenant_a_; }
  TenantFixture& tenant_b() { return tenant_b_; }
  SimIssuer& issuer() { return *issuer_; }
  SimWallet& wallet() { return wallet_; }
  // The attributes of the wallet's PID credentials.
  static AttributeMap PidAttributes();

  rp::RpConfig RpConfigFor(const RegisteredClient& client,
                           std::string scope = kGovernmentScope) const;

  // Plays browser, frontend and wallet: follows the authorize URL, starts
  // verification, lets the wallet present and polls until the session
  // settles. Returns the callback parameters on success.
  Result<UserAgentRun> RunUserAgent(const std::string& authorize_url,
                                    Ecosystem ecosystem = Ecosystem::kEudi,
                                    Tamper tamper = Tamper::kNone);

  // begin_login, RunUserAgent, finish_login.
  Result<nlohmann::json> Login(const RegisteredClient& client,
                               Ecosystem ecosystem = Ecosystem::kEudi);

 private:
  TenantFixture MakeTenant(const std::string& name, const std::string& scope,
                           const std::string& redirect_uri);

  ManualClock clock_;
  std::unique_ptr<System> system_;
  std::unique_ptr<HttpServer> http_;
  std::string base_url_;
  TenantFixture tenant_a_;
  TenantFixture tenant_b_;
  std::unique_ptr<SimIssuer> issuer_;
  SimWallet wallet_{"holder-1"};
};

// ProofTemplate spec used for the testbed tenants: subject from
// personal_identifier, document_number/given_name/family_name mapped through.
TemplateSpec PidTemplateSpec(const std::string& name, const std::string& scope);

}  // namespace vcbridge

#endif  // VCBRIDGE_THREATS_TESTBED_H_
