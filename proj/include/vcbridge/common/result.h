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

#ifndef VCBRIDGE_COMMON_RESULT_H_
#define VCBRIDGE_COMMON_RESULT_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace vcbridge {

// Error codes shared across modules. OAuth 2.0 codes are spelled exactly as
// they appear on the wire.
namespace errc {
inline constexpr std::string_view kInvalidRequest = "invalid_request";
inline constexpr std::string_view kInvalidClient = "invalid_client";
inline constexpr std::string_view kInvalidGrant = "invalid_grant";
inline constexpr std::string_view kInvalidScope = "invalid_scope";
inline constexpr std::string_view kUnsupportedResponseType =
    "unsupported_response_type";
inline constexpr std::string_view kUnsupportedGrantType =
    "unsupported_grant_type";
inline constexpr std::string_view kUnauthorized = "unauthorized";
inline constexpr std::string_view kValidationError = "validation_error";
inline constexpr std::string_view kRegistrationConflict =
    "registration_conflict";
inline constexpr std::string_view kScopeConflict = "scope_conflict";
inline constexpr std::string_view kClaimsUnsatisfied = "claims_unsatisfied";
inline constexpr std::string_view kNotFound = "not_found";
inline constexpr std::string_view kSessionNotFound = "session_not_found";
inline constexpr std::string_view kCorrelationNotFound =
    "correlation_not_found";
inline constexpr std::string_view kInvalidState = "invalid_state";
inline constexpr std::string_view kInvalidAuthToken = "invalid_auth_token";
inline constexpr std::string_view kInternalError = "internal_error";
inline constexpr std::string_view kEcosystemUnsupported =
    "ecosystem_unsupported";
inline constexpr std::string_view kNormalizationError = "normalization_error";
inline constexpr std::string_view kNoMatchingCredential =
    "no_matching_credential";
inline constexpr std::string_view kMalformedToken = "malformed_token";
inline constexpr std::string_view kDiscoveryError = "discovery_error";
inline constexpr std::string_view kCsrfDetected = "csrf_detected";
inline constexpr std::string_view kTokenInvalid = "token_invalid";
inline constexpr std::string_view kUnknownScenario = "unknown_scenario";
}  // namespace errc

struct Error {
  std::string code;
  std::string description;

  bool operator==(const Error&) const = default;
};

inline Error MakeError(std::string_view code, std::string description = {}) {
  return Error{std::string(code), std::move(description)};
}

class BadResultAccess : public std::logic_error {
 public:
  explicit BadResultAccess(const Error& error)
      : std::logic_error("value() on error result: " + error.code) {}
};

// Either a value or an Error. Operations report expected failures through
// this type; exceptions are reserved for programming errors and crypto
// backend failures.
template <typename T>
class [[nodiscard]] Result {
 public:
  Result(T value) : data_(std::in_place_index<0>, std::move(value)) {}
  Result(Error error) : data_(std::in_place_index<1>, std::move(error)) {}

  bool ok() const { return data_.index() == 0; }
  explicit operator bool() const { return ok(); }

  const T& value() const& {
    Check();
    return std::get<0>(data_);
  }
  T& value() & {
    Check();
    return std::get<0>(data_);
  }
  T&& value() && {
    Check();
    return std::get<0>(std::move(data_));
  }

  const T& operator*() const& { return value(); }
  T& operator*() & { return value(); }
  const T* operator->() const { return &value(); }
  T* operator->() { return &value(); }

  const Error& error() const { return std::get<1>(data_); }

 private:
  void Check() const {
    if (!ok()) throw BadResultAccess(std::get<1>(data_));
  }

  std::variant<T, Error> data_;
};

using Status = Result<std::monostate>;

inline Status OkStatus() { return std::monostate{}; }

}  // namespace vcbridge

#endif  // VCBRIDGE_COMMON_RESULT_H_
