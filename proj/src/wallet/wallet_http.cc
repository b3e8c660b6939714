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

#include <httplib.h>

#include "vcbridge/wallet/wallet_sim.h"

namespace vcbridge {

Result<nlohmann::json> PresentOverHttp(SimWallet& wallet,
                                       const std::string& base_url,
                                       const std::string& correlation_id,
                                       Tamper tamper) {
  httplib::Client http(base_url);
  http.set_connection_timeout(5);
  auto fetched = http.Get("/verify/request/" + correlation_id);
  if (!fetched) return MakeError(errc::kInternalError, "request fetch failed");
  auto body = nlohmann::json::parse(fetched->body, nullptr, false);
  if (fetched->status != 200 || body.is_discarded()) {
    return MakeError(body.value("error", std::string(errc::kInternalError)),
                     body.value("error_description", "request fetch failed"));
  }

  PresentationRequest request;
  try {
    request = body.at("request").get<PresentationRequest>();
  } catch (const nlohmann::json::exception& e) {
    return MakeError(errc::kInternalError, e.what());
  }
  auto presentation = wallet.Respond(request, tamper);
  if (!presentation.ok()) return presentation.error();

  auto posted = http.Post("/verify/present/" + correlation_id,
                          nlohmann::json(*presentation).dump(),
                          "application/json");
  if (!posted) return MakeError(errc::kInternalError, "presentation post failed");
  auto reply = nlohmann::json::parse(posted->body, nullptr, false);
  if (reply.is_discarded()) {
    return MakeError(errc::kInternalError, "unparseable verifier reply");
  }
  if (posted->status != 200) {
    return MakeError(reply.value("error", std::string(errc::kInternalError)),
                     reply.value("error_description", ""));
  }
  return reply;
}

}  // namespace vcbridge
