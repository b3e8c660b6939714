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

#ifndef VCBRIDGE_TESTS_UNIT_TEST_SUPPORT_H_
#define VCBRIDGE_TESTS_UNIT_TEST_SUPPORT_H_

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "vcbridge/common/crypto.h"
#include "vcbridge/common/encoding.h"
#include "vcbridge/common/jwt.h"
#include "vcbridge/threats/testbed.h"

namespace vcbridge::testing {

struct CodeGrant {
  std::string code;
  std::string session_id;
  std::string verifier;
  std::string state;
  std::string nonce;
};

inline QueryParams AuthorizeQuery(const RegisteredClient& client,
                                  const std::string& scope,
                                  const std::string& verifier,
                                  const std::string& state = "st-1",
                                  const std::string& nonce = "n-1") {
  return {{"response_type", "code"},
          {"client_id", client.record.client_id.value()},
          {"redirect_uri", client.record.redirect_uris.at(0)},
          {"scope", "openid " + scope},
          {"state", state},
          {"nonce", nonce},
          {"code_challenge", PkceS256Challenge(verifier)},
          {"code_challenge_method", "S256"}};
}

inline std::string AuthTokenOf(const AuthorizeResponse& r) {
  auto q = ParseQuery(r.location.substr(r.location.find('?') + 1));
  return FindParam(q.value_or(QueryParams{}), "auth_token").value_or("");
}

// Authorize, verify with the testbed wallet and read the code back from the
// status endpoint, all in-process.
inline Result<CodeGrant> RunToCode(Testbed& tb, const RegisteredClient& client,
                                   const std::string& scope = kGovernmentScope,
                                   Ecosystem ecosystem = Ecosystem::kEudi,
                                   std::optional<std::string> verifier = std::nullopt) {
  Bridge& bridge = tb.system().bridge;
  CodeGrant g;
  g.verifier = verifier.value_or(RandomToken(32));
  g.state = RandomToken(16);
  g.nonce = RandomToken(16);
  auto authorized =
      bridge.HandleAuthorize(AuthorizeQuery(client, scope, g.verifier, g.state, g.nonce));
  if (authorized.kind != AuthorizeResponse::Kind::kRedirect) {
    return authorized.error.value_or(MakeError(errc::kInternalError));
  }
  g.session_id = authorized.session_id;
  auto started = bridge.StartVerification(AuthTokenOf(authorized), ecosystem);
  if (!started.ok()) return started.error();
  auto presentation = tb.wallet().Respond(started->request);
  if (!presentation.ok()) return presentation.error();
  auto submitted = tb.system().verifier.SubmitPresentation(
      started->request.correlation_id, *presentation);
  if (!submitted.ok()) return submitted.error();
  auto status = bridge.VerificationStatus(client.record.client_id, g.session_id);
  if (!status.ok()) return status.error();
  if (!status->code) {
    return MakeError("verification_failed", status->failure_reason.value_or(""));
  }
  g.code = *status->code;
  return g;
}

inline QueryParams TokenForm(const CodeGrant& g, const RegisteredClient& client,
                             std::optional<std::string> verifier = std::nullopt) {
  QueryParams form = {{"grant_type", "authorization_code"},
                      {"code", g.code},
                      {"redirect_uri", client.record.redirect_uris.at(0)},
                      {"code_verifier", verifier.value_or(g.verifier)},
                      {"client_id", client.record.client_id.value()}};
  if (client.client_secret) form.emplace_back("client_secret", *client.client_secret);
  return form;
}

inline nlohmann::json JwtPayload(const std::string& token) {
  auto decoded = DecodeJwt(token);
  return decoded.ok() ? decoded->payload : nlohmann::json();
}

#ifdef VCBRIDGE_PY_ORACLE
// Runs the Python oracle; nullopt when python3 or `cryptography` is missing.
inline std::optional<nlohmann::json> RunPyOracle(const nlohmann::json& request) {
  static const bool available =
      std::system("python3 -c 'import cryptography' >/dev/null 2>&1") == 0;
  if (!available) return std::nullopt;
  std::string in = ::testing::TempDir() + "/oracle_in_" + RandomToken(6) + ".json";
  std::ofstream(in) << request.dump();
  std::string cmd = "python3 " VCBRIDGE_PY_ORACLE " < " + in;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return std::nullopt;
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int rc = pclose(pipe);
  std::remove(in.c_str());
  if (rc != 0) return std::nullopt;
  return nlohmann::json::parse(out, nullptr, false);
}
#endif

}  // namespace vcbridge::testing

#endif  // VCBRIDGE_TESTS_UNIT_TEST_SUPPORT_H_
