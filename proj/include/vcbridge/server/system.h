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

#ifndef VCBRIDGE_SERVER_SYSTEM_H_
#define VCBRIDGE_SERVER_SYSTEM_H_

#include <mutex>
#include <optional>
#include <string>

#include "vcbridge/common/clock.h"
#include "vcbridge/common/fault_injection.h"
#include "vcbridge/iam/iam.h"
#include "vcbridge/oidc/bridge.h"
#include "vcbridge/store/session_store.h"
#include "vcbridge/templates/template_engine.h"
#include "vcbridge/templates/template_store.h"
#include "vcbridge/verifier/presentation.h"
#include "vcbridge/verifier/verifier_service.h"

namespace vcbridge {

struct SystemOptions {
  BridgeOptions bridge;
  IamOptions iam;
  // Where wallets fetch presentation requests; defaults to bridge.issuer.
  std::string verifier_base_url;
};

// One bridge deployment: every component wired together in process.
// Members are public so tests and the threat harness can reach any layer.
class System {
 public:
  System(const Clock& clock, SystemOptions options = {});

  System(const System&) = delete;
  System& operator=(const System&) = delete;

  void SetFaultInjection(const FaultInjection& faults);
  // Points issuer, frontend and wallet URLs at `base_url` (e.g. once an
  // ephemeral port is known). Call before serving.
  void SetPublicUrl(const std::string& base_url);

  const Clock& clock;
  InMemorySessionStore session_store;
  InMemoryTemplateStore template_store;
  Iam iam;
  TemplateEngine templates;
  IssuerRegistry issuers;
  VerifierService verifier;
  Bridge bridge;

 private:
  // The verifier authenticates to the bridge with a short-lived service
  // token, renewed on demand.
  std::string ServiceTokenValue();

  std::mutex token_mu_;
  std::optional<ServiceToken> service_token_;
};

}  // namespace vcbridge

#endif  // VCBRIDGE_SERVER_SYSTEM_H_
