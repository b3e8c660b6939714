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

#include "vcbridge/rp/relying_party.h"

#include <httplib.h>

#include "vcbridge/common/crypto.h"
#include "vcbridge/common/jwt.h"

namespace vcbridge::rp {
namespace {

using nlohmann::json;

// "http://host:port/path" -> {"http://host:port", "/path"}
std::pair<std::string, std::string> SplitUrl(const std::string& url) {
  size_t scheme = url.find("://");
  size_t slash = url.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

Result<json> FetchJson(const std::string& url) {
  auto [base, path] = SplitUrl(url);
  httplib::Client http(base);
  auto res = http.Get(path);
  if (!res || res->status != 200) {
    return MakeError(errc::kDiscoveryError, "GET " + url + " failed");
  }
  json body = json::parse(res->body, nullptr, false);
  if (!body.is_object()) {
    return MakeError(errc::kDiscoveryError, url + " is not a JSON object");
  }
  return body;
}

Error Invalid(std::string reason) {
  return MakeError(errc::kTokenInvalid, std::move(reason));
}

}  // namespace

RelyingParty::RelyingParty(RpConfig config, const Clock& clock)
    : config_(std::move(config)), clock_(clock) {}

Status RelyingParty::Discover() {
  auto doc = FetchJson(config_.issuer_url + "/.well-known/openid-configuration");
  if (!doc.ok()) return doc.error();
  ProviderMetadata m;
  for (auto [name, field] :
       {std::pair{"issuer", &m.issuer},
        {"authorization_endpoint", &m.authorization_endpoint},
        {"token_endpoint", &m.token_endpoint}, {"jwks_uri", &m.jwks_uri}}) {
    if (!doc->contains(name) || !(*doc)[name].is_string()) {
      return MakeError(errc::kDiscoveryError, std::string(name) + " missing");
    }
    *field = (*doc)[name].get<std::string>();
  }
  if (m.issuer != config_.issuer_url) {
    return MakeError(errc::kDiscoveryError, "issuer does not match issuer_url");
  }
  metadata_ = m;
  return OkStatus();
}

Result<LoginStart> RelyingParty::BeginLogin() {
  if (!metadata_) {
    if (Status s = Discover(); !s.ok()) return s.error();
  }
  PendingLogin p{RandomToken(16), RandomToken(16), RandomToken(32),
                 clock_.Now()};
  std::string scope;
  for (const auto& s : config_.scopes) scope += (scope.empty() ? "" : " ") + s;
  std::string url = AppendQuery(metadata_->authorization_endpoint,
                                {{"response_type", "code"},
                                 {"client_id", config_.client_id},
                                 {"redirect_uri", config_.redirect_uri},
                                 {"scope", scope},
                                 {"state", p.state},
                                 {"nonce", p.nonce},
                                 {"code_challenge", PkceS256Challenge(p.code_verifier)},
                                 {"code_challenge_method", "S256"}});
  return LoginStart{url, p};
}

Result<json> RelyingParty::FinishLogin(const QueryParams& callback,
                                       const PendingLogin& pending) {
  auto state = FindParam(callback, "state");
  if (!state || !ConstantTimeEquals(*state, pending.state)) {
    return MakeError(errc::kCsrfDetected, "callback state does not match");
  }
  if (auto error = FindParam(callback, "error")) {
    return MakeError(*error, FindParam(callback, "error_description").value_or(""));
  }
  auto code = FindParam(callback, "code");
  if (!code) return MakeError(errc::kInvalidRequest, "callback has no code");
  if (!metadata_) {
    if (Status s = Discover(); !s.ok()) return s.error();
  }

  QueryParams form = {{"grant_type", "authorization_code"},
                      {"code", *code},
                      {"redirect_uri", config_.redirect_uri},
                      {"code_verifier", pending.code_verifier}};
  httplib::Headers headers;
  if (config_.client_secret) {
    std::string pair = UrlEncode(config_.client_id) + ":" +
                       UrlEncode(*config_.client_secret);
    headers.emplace("Authorization", "Basic " + Base64Encode(pair));
  } else {
    form.emplace_back("client_id", config_.client_id);
  }
  auto [base, path] = SplitUrl(metadata_->token_endpoint);
  httplib::Client http(base);
  auto res = http.Post(path, headers, BuildQuery(form),
                       "application/x-www-form-urlencoded");
  if (!res) return MakeError(errc::kInternalError, "token endpoint unreachable");
  json body = json::parse(res->body, nullptr, false);
  if (res->status != 200 || !body.is_object()) {
    return MakeError(body.is_object() ? body.value("error", "token_error")
                                      : std::string("token_error"),
                     body.is_object() ? body.value("error_description", "") : "");
  }
  if (!body.contains("id_token") || !body["id_token"].is_string()) {
    return Invalid("token response has no id_token");
  }
  auto jwks = FetchJson(metadata_->jwks_uri);
  if (!jwks.ok()) return jwks.error();
  return ValidateIdToken(body["id_token"].get<std::string>(), pending.nonce,
                         *jwks);
}

Result<json> RelyingParty::ValidateIdToken(const std::string& id_token,
                                           const std::string& expected_nonce,
                                           const json& jwks) const {
  auto jwt = DecodeJwt(id_token);
  if (!jwt.ok()) return Invalid("malformed ID Token");
  auto keys = ParseJwks(jwks);
  if (!keys.ok()) return Invalid("unusable JWKS");
  std::string kid = jwt->header.value("kid", "");
  auto key = keys->find(kid);
  if (key == keys->end() || !VerifyRs256Jwt(*jwt, key->second)) {
    return Invalid("signature does not verify against JWKS");
  }
  const json& c = jwt->payload;
  auto str = [&](const char* n) {
    return c.contains(n) && c[n].is_string() ? c[n].get<std::string>() : "";
  };
  if (!metadata_ || str("iss") != metadata_->issuer) return Invalid("iss mismatch");
  bool aud_ok = str("aud") == config_.client_id ||
                (c.contains("aud") && c["aud"].is_array() && c["aud"].size() == 1 &&
                 c["aud"][0] == config_.client_id);
  if (!aud_ok) return Invalid("aud mismatch");
  if (!c.contains("exp") || !c["exp"].is_number_integer() ||
      ToEpochSeconds(clock_.Now()) >= c["exp"].get<int64_t>()) {
    return Invalid("token expired");
  }
  if (str("nonce").empty() || !ConstantTimeEquals(str("nonce"), expected_nonce)) {
    return Invalid("nonce mismatch");
  }
  if (str("sub").empty()) return Invalid("sub missing");
  return c;
}

}  // namespace vcbridge::rp
