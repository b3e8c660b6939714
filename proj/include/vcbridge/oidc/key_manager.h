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

#ifndef VCBRIDGE_OIDC_KEY_MANAGER_H_
#define VCBRIDGE_OIDC_KEY_MANAGER_H_

#include <chrono>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vcbridge/common/clock.h"
#include "vcbridge/common/crypto.h"

namespace vcbridge {

struct KeyRotationOptions {
  Duration rotation_period = std::chrono::hours(24 * 90);
  // How long a retired key stays in the JWKS. At least the ID Token
  // lifetime; the default adds slack for relying-party clock skew.
  Duration grace = std::chrono::hours(24);
  int key_bits = 2048;
  bool generate_initial_key = true;
};

enum class KeyState { kActive, kRetired };

struct SigningKey {
  std::string kid;
  RsaPrivateKey key;
  Timestamp created_at;
  KeyState state = KeyState::kActive;
  std::optional<Timestamp> retired_at;
};

// RS256 signing keys for ID Tokens. Exactly one key is active once the
// manager holds any key at all.
class KeyManager {
 public:
  KeyManager(const Clock& clock, KeyRotationOptions options = {});

  // The active key, rotating first when the rotation period has elapsed.
  std::optional<SigningKey> ActiveKey();

  // Retires the active key (if any) and activates a fresh one. Returns the
  // new kid.
  std::string RotateKeys(Timestamp now);

  // Public JWK Set: the active key plus retired keys still inside the grace
  // window.
  nlohmann::json Jwks() const;

  std::vector<SigningKey> keys() const;

 private:
  SigningKey NewKey(Timestamp now) const;

  const Clock& clock_;
  KeyRotationOptions options_;
  mutable std::mutex mu_;
  std::vector<SigningKey> keys_;
};

// RFC 7638 JWK thumbprint (base64url SHA-256) of an RSA public key.
std::string JwkThumbprint(const RsaPublicKey& key);

}  // namespace vcbridge

#endif  // VCBRIDGE_OIDC_KEY_MANAGER_H_
