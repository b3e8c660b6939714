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

#include "vcbridge/common/crypto.h"

#include <openssl/bn.h>
#include <openssl/core_names.h>
#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/param_build.h>
#include <openssl/rand.h>
#include <openssl/rsa.h>

#include <charconv>
#include <vector>

#include "vcbridge/common/encoding.h"

namespace vcbridge {
namespace {

using BnPtr = std::unique_ptr<BIGNUM, decltype(&BN_free)>;
using MdCtxPtr = std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)>;
using PkeyCtxPtr = std::unique_ptr<EVP_PKEY_CTX, decltype(&EVP_PKEY_CTX_free)>;

EvpPkeyHandle Wrap(EVP_PKEY* key) {
  if (key == nullptr) throw CryptoError("EVP_PKEY allocation failed");
  return EvpPkeyHandle(key, EVP_PKEY_free);
}

const unsigned char* Bytes(std::string_view s) {
  return reinterpret_cast<const unsigned char*>(s.data());
}

std::string BnToBytes(const BIGNUM* bn) {
  std::string out(size_t(BN_num_bytes(bn)), '\0');
  BN_bn2bin(bn, reinterpret_cast<unsigned char*>(out.data()));
  return out;
}

std::string RsaComponent(const EvpPkeyHandle& key, const char* name) {
  BIGNUM* raw = nullptr;
  if (EVP_PKEY_get_bn_param(key.get(), name, &raw) != 1) {
    throw CryptoError("cannot read RSA parameter");
  }
  BnPtr bn(raw, BN_free);
  return Base64UrlEncode(BnToBytes(bn.get()));
}

std::optional<uint64_t> ParseU64(std::string_view s) {
  uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string Scrypt(std::string_view password, std::string_view salt,
                   const ScryptParams& params, size_t out_len) {
  std::string out(out_len, '\0');
  uint64_t maxmem = 128 * params.r * params.n * params.p + (1 << 20) +
                    128 * params.r * params.p;
  if (EVP_PBE_scrypt(password.data(), password.size(), Bytes(salt),
                     salt.size(), params.n, params.r, params.p, maxmem,
                     reinterpret_cast<unsigned char*>(out.data()),
                     out.size()) != 1) {
    throw CryptoError("scrypt failed");
  }
  return out;
}

}  // namespace

std::string RandomBytes(size_t count) {
  std::string out(count, '\0');
  if (count > 0 &&
      RAND_bytes(reinterpret_cast<unsigned char*>(out.data()),
                 static_cast<int>(count)) != 1) {
    throw CryptoError("RAND_bytes failed");
  }
  return out;
}

std::string RandomToken(size_t bytes) {
  return Base64UrlEncode(RandomBytes(bytes));
}

std::string NewUuidV4() {
  std::string b = RandomBytes(16);
  b[6] = char((uint8_t(b[6]) & 0x0f) | 0x40);
  b[8] = char((uint8_t(b[8]) & 0x3f) | 0x80);
  std::string hex = ToHex(b);
  return hex.substr(0, 8) + "-" + hex.substr(8, 4) + "-" + hex.substr(12, 4) +
         "-" + hex.substr(16, 4) + "-" + hex.substr(20, 12);
}

bool IsUuidV4(std::string_view text) {
  if (text.size() != 36) return false;
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (i == 8 || i == 13 || i == 18 || i == 23) {
      if (c != '-') return false;
    } else if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) {
      return false;
    }
  }
  char variant = text[19];
  return text[14] == '4' && (variant == '8' || variant == '9' ||
                             variant == 'a' || variant == 'b');
}

std::string Sha256(std::string_view data) {
  std::string out(32, '\0');
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(),
                 reinterpret_cast<unsigned char*>(out.data()), &len,
                 EVP_sha256(), nullptr) != 1 ||
      len != 32) {
    throw CryptoError("SHA-256 failed");
  }
  return out;
}

std::string HmacSha256(std::string_view key, std::string_view data) {
  std::string out(32, '\0');
  unsigned int len = 0;
  if (HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()),
           Bytes(data), data.size(),
           reinterpret_cast<unsigned char*>(out.data()), &len) == nullptr) {
    throw CryptoError("HMAC-SHA256 failed");
  }
  return out;
}

bool ConstantTimeEquals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  return CRYPTO_memcmp(a.data(), b.data(), a.size()) == 0;
}

std::string PkceS256Challenge(std::string_view code_verifier) {
  return Base64UrlEncode(Sha256(code_verifier));
}

bool IsValidCodeVerifier(std::string_view verifier) {
  if (verifier.size() < 43 || verifier.size() > 128) return false;
  for (char c : verifier) {
    bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
              (c >= '0' && c <= '9') || c == '-' || c == '.' || c == '_' ||
              c == '~';
    if (!ok) return false;
  }
  return true;
}

// --- RSA -------------------------------------------------------------------

RsaPrivateKey RsaPrivateKey::Generate(int bits) {
  return RsaPrivateKey(Wrap(EVP_RSA_gen(static_cast<unsigned>(bits))));
}

std::string RsaPrivateKey::SignRs256(std::string_view data) const {
  MdCtxPtr ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestSignInit(ctx.get(), nullptr, EVP_sha256(), nullptr,
                                 key_.get()) != 1) {
    throw CryptoError("RS256 sign init failed");
  }
  size_t len = 0;
  if (EVP_DigestSign(ctx.get(), nullptr, &len, Bytes(data), data.size()) !=
      1) {
    throw CryptoError("RS256 sign failed");
  }
  std::string sig(len, '\0');
  if (EVP_DigestSign(ctx.get(), reinterpret_cast<unsigned char*>(sig.data()),
                     &len, Bytes(data), data.size()) != 1) {
    throw CryptoError("RS256 sign failed");
  }
  sig.resize(len);
  return sig;
}

std::optional<RsaPublicKey> RsaPublicKey::FromJwkComponents(
    std::string_view n, std::string_view e) {
  auto n_bytes = Base64UrlDecode(n);
  auto e_bytes = Base64UrlDecode(e);
  if (!n_bytes || !e_bytes || n_bytes->empty() || e_bytes->empty()) {
    return std::nullopt;
  }
  BnPtr bn_n(BN_bin2bn(Bytes(*n_bytes), int(n_bytes->size()), nullptr),
             BN_free);
  BnPtr bn_e(BN_bin2bn(Bytes(*e_bytes), int(e_bytes->size()), nullptr),
             BN_free);
  if (!bn_n || !bn_e) return std::nullopt;

  std::unique_ptr<OSSL_PARAM_BLD, decltype(&OSSL_PARAM_BLD_free)> bld(
      OSSL_PARAM_BLD_new(), OSSL_PARAM_BLD_free);
  if (!bld ||
      OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_N, bn_n.get()) !=
          1 ||
      OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_E, bn_e.get()) !=
          1) {
    return std::nullopt;
  }
  std::unique_ptr<OSSL_PARAM, decltype(&OSSL_PARAM_free)> params(
      OSSL_PARAM_BLD_to_param(bld.get()), OSSL_PARAM_free);
  PkeyCtxPtr ctx(EVP_PKEY_CTX_new_from_name(nullptr, "RSA", nullptr),
                 EVP_PKEY_CTX_free);
  EVP_PKEY* key = nullptr;
  if (!params || !ctx || EVP_PKEY_fromdata_init(ctx.get()) != 1 ||
      EVP_PKEY_fromdata(ctx.get(), &key, EVP_PKEY_PUBLIC_KEY, params.get()) !=
          1) {
    return std::nullopt;
  }
  return RsaPublicKey(Wrap(key));
}

bool RsaPublicKey::VerifyRs256(std::string_view data,
                               std::string_view signature) const {
  MdCtxPtr ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestVerifyInit(ctx.get(), nullptr, EVP_sha256(), nullptr,
                                   key_.get()) != 1) {
    return false;
  }
  return EVP_DigestVerify(ctx.get(), Bytes(signature), signature.size(),
                          Bytes(data), data.size()) == 1;
}

std::string RsaPublicKey::ModulusB64() const {
  return RsaComponent(key_, OSSL_PKEY_PARAM_RSA_N);
}

std::string RsaPublicKey::ExponentB64() const {
  return RsaComponent(key_, OSSL_PKEY_PARAM_RSA_E);
}

int RsaPublicKey::bits() const { return EVP_PKEY_get_bits(key_.get()); }

// --- Ed25519 ---------------------------------------------------------------

Ed25519PrivateKey Ed25519PrivateKey::Generate() {
  return Ed25519PrivateKey(Wrap(EVP_PKEY_Q_keygen(nullptr, nullptr, "ED25519")));
}

std::string Ed25519PrivateKey::Sign(std::string_view data) const {
  MdCtxPtr ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestSignInit(ctx.get(), nullptr, nullptr, nullptr,
                                 key_.get()) != 1) {
    throw CryptoError("Ed25519 sign init failed");
  }
  size_t len = 64;
  std::string sig(len, '\0');
  if (EVP_DigestSign(ctx.get(), reinterpret_cast<unsigned char*>(sig.data()),
                     &len, Bytes(data), data.size()) != 1) {
    throw CryptoError("Ed25519 sign failed");
  }
  sig.resize(len);
  return sig;
}

Ed25519PublicKey Ed25519PrivateKey::public_key() const {
  size_t len = 32;
  std::string raw(len, '\0');
  if (EVP_PKEY_get_raw_public_key(
          key_.get(), reinterpret_cast<unsigned char*>(raw.data()), &len) !=
      1) {
    throw CryptoError("cannot export Ed25519 public key");
  }
  return *Ed25519PublicKey::FromRaw(raw);
}

std::optional<Ed25519PublicKey> Ed25519PublicKey::FromRaw(
    std::string_view raw) {
  if (raw.size() != 32) return std::nullopt;
  EVP_PKEY* key = EVP_PKEY_new_raw_public_key(EVP_PKEY_ED25519, nullptr,
                                              Bytes(raw), raw.size());
  if (key == nullptr) return std::nullopt;
  return Ed25519PublicKey(Wrap(key));
}

bool Ed25519PublicKey::Verify(std::string_view data,
                              std::string_view signature) const {
  MdCtxPtr ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestVerifyInit(ctx.get(), nullptr, nullptr, nullptr,
                                   key_.get()) != 1) {
    return false;
  }
  return EVP_DigestVerify(ctx.get(), Bytes(signature), signature.size(),
                          Bytes(data), data.size()) == 1;
}

std::string Ed25519PublicKey::raw() const {
  size_t len = 32;
  std::string out(len, '\0');
  if (EVP_PKEY_get_raw_public_key(
          key_.get(), reinterpret_cast<unsigned char*>(out.data()), &len) !=
      1) {
    throw CryptoError("cannot export Ed25519 public key");
  }
  return out;
}

// --- Passwords -------------------------------------------------------------

std::string HashPassword(std::string_view password,
                         const ScryptParams& params) {
  std::string salt = RandomBytes(16);
  std::string hash = Scrypt(password, salt, params, 32);
  return "scrypt$" + std::to_string(params.n) + "$" +
         std::to_string(params.r) + "$" + std::to_string(params.p) + "$" +
         Base64UrlEncode(salt) + "$" + Base64UrlEncode(hash);
}

bool VerifyPassword(std::string_view password, std::string_view encoded) {
  std::vector<std::string_view> parts;
  while (true) {
    size_t pos = encoded.find('$');
    parts.push_back(encoded.substr(0, pos));
    if (pos == std::string_view::npos) break;
    encoded.remove_prefix(pos + 1);
  }
  if (parts.size() != 6 || parts[0] != "scrypt") return false;
  auto n = ParseU64(parts[1]);
  auto r = ParseU64(parts[2]);
  auto p = ParseU64(parts[3]);
  auto salt = Base64UrlDecode(parts[4]);
  auto expected = Base64UrlDecode(parts[5]);
  if (!n || !r || !p || !salt || !expected || expected->empty()) return false;
  std::string actual =
      Scrypt(password, *salt, ScryptParams{*n, *r, *p}, expected->size());
  return ConstantTimeEquals(actual, *expected);
}

}  // namespace vcbridge
