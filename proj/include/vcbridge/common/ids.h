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

#ifndef VCBRIDGE_COMMON_IDS_H_
#define VCBRIDGE_COMMON_IDS_H_

#include <compare>
#include <functional>
#include <string>
#include <utility>

#include <json.hpp>

namespace vcbridge {

// Opaque identifier that cannot be confused with another kind of id.
template <typename Tag>
class StrongId {
 public:
  StrongId() = default;
  explicit StrongId(std::string value) : value_(std::move(value)) {}

  const std::string& value() const { return value_; }
  bool empty() const { return value_.empty(); }

  auto operator<=>(const StrongId&) const = default;

 private:
  std::string value_;
};

template <typename Tag>
void to_json(nlohmann::json& j, const StrongId<Tag>& id) {
  j = id.value();
}

template <typename Tag>
void from_json(const nlohmann::json& j, StrongId<Tag>& id) {
  id = StrongId<Tag>(j.get<std::string>());
}

using TenantId = StrongId<struct TenantIdTag>;
using ClientId = StrongId<struct ClientIdTag>;
using TemplateId = StrongId<struct TemplateIdTag>;

}  // namespace vcbridge

template <typename Tag>
struct std::hash<vcbridge::StrongId<Tag>> {
  size_t operator()(const vcbridge::StrongId<Tag>& id) const noexcept {
    return std::hash<std::string>{}(id.value());
  }
};

#endif  // VCBRIDGE_COMMON_IDS_H_
