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

#include "vcbridge/common/jwt.h"

#include "vcbridge/common/encoding.h"

namespace vcbridge {

using nlohmann::json;

std::string SignRs256Jwt(json header, const json& payload,
                         const RsaPrivateKey& key) {
  header["alg"] = "RS256";
  if (!header.contains("typ")) header["typ"] = "JWT";
  std::string signing_input = Base64UrlEncode(header.dump()) + "." +
                              Base64UrlEncode(payload.dump());
  std::string signature = key.SignRs256(signing_input);
  return signing_input + "." + Base64UrlEncode(signature);
}

Result<DecodedJwt> DecodeJwt(std::string_view compact) {
  size_t first = compact.find('.');
  size_t second = first == std::string_view::npos
                      ? std::string_view::npos
                      : compact.find('.', first + 1);
  if (second == std::string_view::npos ||
      compact.find('.', second + 1) != std::string_view::npos) {
    return MakeError(errc::kMalformedToken, "expected three segments");
  }
  auto header = Base64UrlDecode(compact.substr(0, first));
  auto payload = Base64UrlDecode(compact.substr(first + 1, second - first - 1));
  auto signature = Base64UrlDecode(compact.substr(second + 1));
  if (!header || !payload || !signature) {
    return MakeError(errc::kMalformedToken, "invalid base64url segment");
  }
  DecodedJwt jwt;
  jwt.header = json::parse(*header, nullptr, false);
  jwt.payload = json::parse(*payload, nullptr, false);
  if (!jwt.header.is_object() || !jwt.payload.is_object()) {
    return MakeError(errc::kMalformedToken, "segments are not JSON objects");
  }
  jwt.signing_input = std::string(compact.substr(0, second));
  jwt.signature = std::move(*signature);
  return jwt;
}

bool VerifyRs256Jwt(const DecodedJwt& jwt, const RsaPublicKey& key) {
  auto alg = jwt.header.find("alg");
  if (alg == jwt.header.end() || *alg != "RS256") return false;
  return key.VerifyRs256(jwt.signing_input, jwt.signature);
}

json PublicJwk(const RsaPublicKey& key, std::string_view kid) {
  return json{{"kty", "RSA"},
              {"use", "sig"},
              {"alg", "RS256"},
              {"kid", kid},
              {"n", key.ModulusB64()},
              {"e", key.ExponentB64()}};
}

Result<std::map<std::string, RsaPublicKey>> ParseJwks(const json& jwks) {
  if (!jwks.is_object() || !jwks.contains("keys") ||
      !jwks["keys"].is_array()) {
    return MakeError(errc::kMalformedToken, "JWKS has no keys array");
  }
  std::map<std::string, RsaPublicKey> keys;
  for (const auto& jwk : jwks["keys"]) {
    if (!jwk.is_object() || jwk.value("kty", "") != "RSA") continue;
    if (jwk.contains("use") && jwk["use"] != "sig") continue;
    if (!jwk.contains("n") || !jwk["n"].is_string() || !jwk.contains("e") ||
        !jwk["e"].is_string()) {
      continue;
    }
    auto key = RsaPublicKey::FromJwkComponents(jwk["n"].get<std::string>(),
                                               jwk["e"].get<std::string>());
    if (key) keys.emplace(jwk.value("kid", ""), std::move(*key));
  }
  if (keys.empty()) {
    return MakeError(errc::kMalformedToken, "JWKS holds no usable RSA keys");
  }
  return keys;
}

}  // namespace vcbridge
