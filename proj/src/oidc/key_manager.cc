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

#include "vcbridge/oidc/key_manager.h"

#include <algorithm>

#include "vcbridge/common/encoding.h"
#include "vcbridge/common/jwt.h"

namespace vcbridge {

std::string JwkThumbprint(const RsaPublicKey& key) {
  // Members in lexicographic order, no whitespace.
  std::string canonical = R"({"e":")" + key.ExponentB64() +
                          R"(","kty":"RSA","n":")" + key.ModulusB64() +
                          R"("})";
  return Base64UrlEncode(Sha256(canonical));
}

KeyManager::KeyManager(const Clock& clock, KeyRotationOptions options)
    : clock_(clock), options_(options) {
  if (options_.generate_initial_key) keys_.push_back(NewKey(clock_.Now()));
}

SigningKey KeyManager::NewKey(Timestamp now) const {
  RsaPrivateKey key = RsaPrivateKey::Generate(options_.key_bits);
  std::string kid = JwkThumbprint(key.public_key());
  return SigningKey{std::move(kid), std::move(key), now, KeyState::kActive,
                    std::nullopt};
}

std::optional<SigningKey> KeyManager::ActiveKey() {
  Timestamp now = clock_.Now();
  {
    std::lock_guard lock(mu_);
    auto active = std::find_if(keys_.begin(), keys_.end(), [](const auto& k) {
      return k.state == KeyState::kActive;
    });
    if (active == keys_.end()) return std::nullopt;
    if (now - active->created_at < options_.rotation_period) return *active;
  }
  RotateKeys(now);
  std::lock_guard lock(mu_);
  return keys_.back();
}

std::string KeyManager::RotateKeys(Timestamp now) {
  SigningKey fresh = NewKey(now);
  std::string kid = fresh.kid;
  std::lock_guard lock(mu_);
  for (auto& k : keys_) {
    if (k.state == KeyState::kActive) {
      k.state = KeyState::kRetired;
      k.retired_at = now;
    }
  }
  // Keys past their grace window are no longer needed to verify anything.
  std::erase_if(keys_, [&](const SigningKey& k) {
    return k.state == KeyState::kRetired && now >= *k.retired_at + options_.grace;
  });
  keys_.push_back(std::move(fresh));
  return kid;
}

nlohmann::json KeyManager::Jwks() const {
  Timestamp now = clock_.Now();
  nlohmann::json keys = nlohmann::json::array();
  std::lock_guard lock(mu_);
  for (const auto& k : keys_) {
    bool published = k.state == KeyState::kActive ||
                     now < *k.retired_at + options_.grace;
    if (published) keys.push_back(PublicJwk(k.key.public_key(), k.kid));
  }
  return nlohmann::json{{"keys", keys}};
}

std::vector<SigningKey> KeyManager::keys() const {
  std::lock_guard lock(mu_);
  return keys_;
}

}  // namespace vcbridge
