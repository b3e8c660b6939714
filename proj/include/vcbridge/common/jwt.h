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

#ifndef VCBRIDGE_COMMON_JWT_H_
#define VCBRIDGE_COMMON_JWT_H_

#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

#include "vcbridge/common/crypto.h"
#include "vcbridge/common/result.h"

namespace vcbridge {

// A compact JWS split into its parts. Nothing here is trusted until
// VerifyRs256Jwt() has succeeded.
struct DecodedJwt {
  nlohmann::json header;
  nlohmann::json payload;
  std::string signing_input;  // "<b64 header>.<b64 payload>"
  std::string signature;      // raw bytes
};

// Serializes `payload`, sets alg=RS256 and typ (default "JWT") in `header`
// and signs with `key`.
std::string SignRs256Jwt(nlohmann::json header, const nlohmann::json& payload,
                         const RsaPrivateKey& key);

// Parses without verifying. Fails with malformed_token on anything other
// than three base64url segments holding JSON objects.
Result<DecodedJwt> DecodeJwt(std::string_view compact);

// True iff header.alg is exactly "RS256" and the signature verifies.
bool VerifyRs256Jwt(const DecodedJwt& jwt, const RsaPublicKey& key);

// Public JWK for `key`; never carries private members.
nlohmann::json PublicJwk(const RsaPublicKey& key, std::string_view kid);

// RSA signing keys of a JWK Set, by kid. Non-RSA or non-sig keys are
// skipped; an empty result is an error.
Result<std::map<std::string, RsaPublicKey>> ParseJwks(
    const nlohmann::json& jwks);

}  // namespace vcbridge

#endif  // VCBRIDGE_COMMON_JWT_H_
