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

#include "vcbridge/server/system.h"

namespace vcbridge {
namespace {

std::string VerifierBase(const SystemOptions& options) {
  return options.verifier_base_url.empty() ? options.bridge.issuer
                                           : options.verifier_base_url;
}

}  // namespace

System::System(const Clock& clock, SystemOptions options)
    : clock(clock),
      session_store(clock),
      iam(clock, template_store, options.iam),
      templates(clock, iam, template_store),
      verifier(clock, session_store, issuers, VerifierBase(options)),
      bridge(clock, options.bridge, session_store, iam, templates, verifier) {
  verifier.set_result_sink([this](const VerificationResult& result) {
    return bridge.CompleteVerification(ServiceTokenValue(),
                                       result.correlation_id, result);
  });
}

void System::SetFaultInjection(const FaultInjection& faults) {
  templates.set_fault_injection(faults);
  bridge.set_fault_injection(faults);
}

void System::SetPublicUrl(const std::string& base_url) {
  bridge.set_issuer(base_url);
  bridge.set_auth_ui_url(base_url + "/ui/auth.html");
  verifier.set_public_base_url(base_url);
}

std::string System::ServiceTokenValue() {
  std::lock_guard lock(token_mu_);
  // Renew a little early so a token never expires mid-call.
  if (!service_token_ ||
      clock.Now() + std::chrono::seconds(30) >= service_token_->expires_at) {
    service_token_ = iam.IssueServiceToken("verifier");
  }
  return service_token_->token;
}

}  // namespace vcbridge
