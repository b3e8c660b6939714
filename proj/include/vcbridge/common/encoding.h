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

#ifndef VCBRIDGE_COMMON_ENCODING_H_
#define VCBRIDGE_COMMON_ENCODING_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vcbridge {

// Unpadded base64url (RFC 4648 section 5).
std::string Base64UrlEncode(std::string_view bytes);

// Strict decode: rejects padding, whitespace and characters outside the
// base64url alphabet.
std::optional<std::string> Base64UrlDecode(std::string_view text);

std::string Base64Encode(std::string_view bytes);
std::optional<std::string> Base64Decode(std::string_view text);

// Percent-encodes everything outside the RFC 3986 unreserved set.
std::string UrlEncode(std::string_view text);
std::optional<std::string> UrlDecode(std::string_view text);

using QueryParams = std::vector<std::pair<std::string, std::string>>;

// application/x-www-form-urlencoded; '+' decodes to space. Malformed
// percent escapes yield nullopt.
std::optional<QueryParams> ParseQuery(std::string_view query);
std::string BuildQuery(const QueryParams& params);

// Appends `params` to `url`, choosing '?' or '&'.
std::string AppendQuery(std::string url, const QueryParams& params);

// First value for `key`, if any.
std::optional<std::string> FindParam(const QueryParams& params,
                                     std::string_view key);

std::string ToHex(std::string_view bytes);

}  // namespace vcbridge

#endif  // VCBRIDGE_COMMON_ENCODING_H_
