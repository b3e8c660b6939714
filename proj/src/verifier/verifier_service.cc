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

#include "vcbridge/verifier/verifier_service.h"

#include "vcbridge/common/crypto.h"

namespace vcbridge {

VerifierService::VerifierService(const Clock& clock, SessionStore& store,
                                 const IssuerRegistry& issuers,
                                 std::string public_base_url)
    : clock_(clock),
      store_(store),
      issuers_(issuers),
      public_base_url_(std::move(public_base_url)) {
  for (Ecosystem e : kAllEcosystems) {
    adapters_.emplace(e, MakeAdapter(e, clock_, store_, issuers_));
  }
}

const VerifierAdapter* VerifierService::adapter(Ecosystem ecosystem) const {
  auto it = adapters_.find(ecosystem);
  return it == adapters_.end() ? nullptr : it->second.get();
}

std::string VerifierService::RequestKey(const std::string& correlation_id) {
  return "request:" + correlation_id;
}

Result<PresentationRequest> VerifierService::StartVerification(
    const ProofTemplate& tmpl, Ecosystem ecosystem,
    const std::string& correlation_id, Timestamp expires_at) {
  Duration ttl = expires_at - clock_.Now();
  if (ttl <= Duration::zero()) {
    return MakeError(errc::kInvalidAuthToken, "verification window closed");
  }
  auto request = adapters_.at(ecosystem)->BuildRequest(tmpl, correlation_id);
  if (!request.ok()) return request.error();
  if (request->expires_at > expires_at) request->expires_at = expires_at;
  store_.Put(Namespace::kChallenge, RequestKey(correlation_id),
             nlohmann::json(*request).dump(), ttl);
  return request;
}

Result<PresentationRequest> VerifierService::GetRequest(
    const std::string& correlation_id) const {
  if (!IsUuidV4(correlation_id)) {
    return MakeError(errc::kCorrelationNotFound, "unknown correlation id");
  }
  auto stored = store_.Get(Namespace::kChallenge, RequestKey(correlation_id));
  if (!stored) {
    return MakeError(errc::kCorrelationNotFound, "unknown correlation id");
  }
  return nlohmann::json::parse(*stored).get<PresentationRequest>();
}

Result<SubmissionOutcome> VerifierService::SubmitPresentation(
    const std::string& correlation_id, const Presentation& presentation) {
  auto request = GetRequest(correlation_id);
  if (!request.ok()) return request.error();

  SubmissionOutcome outcome;
  outcome.result = adapters_.at(request->ecosystem)
                       ->VerifyPresentation(*request, presentation);
  if (sink_) {
    Status forwarded = sink_(outcome.result);
    outcome.accepted = forwarded.ok();
    if (!forwarded.ok()) outcome.rejection = forwarded.error().code;
  }
  return outcome;
}

std::string VerifierService::RequestUri(
    const std::string& correlation_id) const {
  return public_base_url_ + "/verify/request/" + correlation_id;
}

std::string VerifierService::DeepLink(
    const PresentationRequest& request) const {
  return adapters_.at(request.ecosystem)
      ->DeepLink(request, RequestUri(request.correlation_id));
}

}  // namespace vcbridge
