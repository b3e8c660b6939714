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

#ifndef VCBRIDGE_VERIFIER_VERIFIER_SERVICE_H_
#define VCBRIDGE_VERIFIER_VERIFIER_SERVICE_H_

#include <functional>
#include <map>
#include <memory>
#include <string>

#include "vcbridge/common/clock.h"
#include "vcbridge/common/result.h"
#include "vcbridge/store/session_store.h"
#include "vcbridge/templates/proof_template.h"
#include "vcbridge/verifier/adapter.h"
#include "vcbridge/verifier/presentation.h"

namespace vcbridge {

struct SubmissionOutcome {
  VerificationResult result;
  // Whether the bridge accepted the result (a replay is verified-and-failed
  // here but rejected upstream because the session already completed).
  bool accepted = false;
  std::string rejection;  // upstream error code when !accepted
};

// Southbound verification front door: keeps pending presentation requests,
// routes presentations to the right adapter and forwards the normalized
// result to the bridge.
class VerifierService {
 public:
  // Forwards a result upstream with the service's credentials.
  using ResultSink = std::function<Status(const VerificationResult&)>;

  VerifierService(const Clock& clock, SessionStore& store,
                  const IssuerRegistry& issuers, std::string public_base_url);

  void set_result_sink(ResultSink sink) { sink_ = std::move(sink); }
  void set_public_base_url(std::string url) { public_base_url_ = std::move(url); }

  const VerifierAdapter* adapter(Ecosystem ecosystem) const;
  const IssuerRegistry& issuers() const { return issuers_; }

  // Builds and parks a request for `correlation_id`, replacing any earlier
  // one (the holder may switch wallets). Lives until `expires_at`.
  Result<PresentationRequest> StartVerification(
      const ProofTemplate& tmpl, Ecosystem ecosystem,
      const std::string& correlation_id, Timestamp expires_at);

  Result<PresentationRequest> GetRequest(
      const std::string& correlation_id) const;

  Result<SubmissionOutcome> SubmitPresentation(
      const std::string& correlation_id, const Presentation& presentation);

  // "<base>/verify/request/<correlation_id>"
  std::string RequestUri(const std::string& correlation_id) const;
  std::string DeepLink(const PresentationRequest& request) const;

 private:
  static std::string RequestKey(const std::string& correlation_id);

  const Clock& clock_;
  SessionStore& store_;
  const IssuerRegistry& issuers_;
  std::string public_base_url_;
  std::map<Ecosystem, std::unique_ptr<VerifierAdapter>> adapters_;
  ResultSink sink_;
};

}  // namespace vcbridge

#endif  // VCBRIDGE_VERIFIER_VERIFIER_SERVICE_H_
