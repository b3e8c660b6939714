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

#ifndef VCBRIDGE_COMMON_CRYPTO_H_
#define VCBRIDGE_COMMON_CRYPTO_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

struct evp_pkey_st;

namespace vcbridge {

// Thrown when the crypto backend itself fails (allocation, RNG exhaustion).
// Verification failures are reported as `false`, never as this.
class CryptoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// CSPRNG bytes.
std::string RandomBytes(size_t count);

// base64url of `bytes` CSPRNG bytes; 32 bytes gives a 256-bit bearer token.
std::string RandomToken(size_t bytes = 32);

// Random UUID version 4 (122 random bits), lowercase canonical form.
std::string NewUuidV4();
bool IsUuidV4(std::string_view text);

// Raw 32-byte digest.
std::string Sha256(std::string_view data);
std::string HmacSha256(std::string_view key, std::string_view data);

// Length leaks; contents compared in constant time.
bool ConstantTimeEquals(std::string_view a, std::string_view b);

// PKCE S256 transform: base64url(SHA-256(ascii(verifier))).
std::string PkceS256Challenge(std::string_view code_verifier);

// RFC 7636 verifier syntax: 43..128 chars of [A-Za-z0-9-._~].
bool IsValidCodeVerifier(std::string_view verifier);

using EvpPkeyHandle = std::shared_ptr<evp_pkey_st>;

class RsaPublicKey {
 public:
  // Builds a key from base64url big-endian modulus and exponent (JWK n/e).
  static std::optional<RsaPublicKey> FromJwkComponents(std::string_view n,
                                                       std::string_view e);

  bool VerifyRs256(std::string_view data, std::string_view signature) const;

  // base64url big-endian components, as published in a JWK.
  std::string ModulusB64() const;
  std::string ExponentB64() const;
  int bits() const;

 private:
  friend class RsaPrivateKey;
  explicit RsaPublicKey(EvpPkeyHandle key) : key_(std::move(key)) {}
  EvpPkeyHandle key_;
};

// RSA keypair used for RS256 (PKCS#1 v1.5 with SHA-256).
class RsaPrivateKey {
 public:
  static RsaPrivateKey Generate(int bits = 2048);

  std::string SignRs256(std::string_view data) const;
  RsaPublicKey public_key() const { return RsaPublicKey(key_); }

 private:
  explicit RsaPrivateKey(EvpPkeyHandle key) : key_(std::move(key)) {}
  EvpPkeyHandle key_;
};

class Ed25519PublicKey {
 public:
  static std::optional<Ed25519PublicKey> FromRaw(std::string_view raw);

  bool Verify(std::string_view data, std::string_view signature) const;
  std::string raw() const;

 private:
  friend class Ed25519PrivateKey;
  explicit Ed25519PublicKey(EvpPkeyHandle key) : key_(std::move(key)) {}
  EvpPkeyHandle key_;
};

class Ed25519PrivateKey {
 public:
  static Ed25519PrivateKey Generate();

  std::string Sign(std::string_view data) const;
  Ed25519PublicKey public_key() const;

 private:
  explicit Ed25519PrivateKey(EvpPkeyHandle key) : key_(std::move(key)) {}
  EvpPkeyHandle key_;
};

// scrypt cost parameters. Defaults use 16 MiB per hash.
struct ScryptParams {
  uint64_t n = 1 << 14;
  uint64_t r = 8;
  uint64_t p = 1;
};

// Encoded as "scrypt$<n>$<r>$<p>$<salt-b64url>$<hash-b64url>".
std::string HashPassword(std::string_view password,
                         const ScryptParams& params = {});
bool VerifyPassword(std::string_view password, std::string_view encoded);

}  // namespace vcbridge

#endif  // VCBRIDGE_COMMON_CRYPTO_H_
