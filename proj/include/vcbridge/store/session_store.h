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

#ifndef VCBRIDGE_STORE_SESSION_STORE_H_
#define VCBRIDGE_STORE_SESSION_STORE_H_

#include <array>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "vcbridge/common/clock.h"
#include "vcbridge/common/ids.h"

namespace vcbridge {

enum class Namespace { kSession, kAuthToken, kAuthCode, kChallenge };

inline constexpr std::array<Namespace, 4> kAllNamespaces = {
    Namespace::kSession, Namespace::kAuthToken, Namespace::kAuthCode,
    Namespace::kChallenge};

// "SESSION", "AUTH_TOKEN", "AUTH_CODE", "CHALLENGE".
std::string_view NamespacePrefix(Namespace ns);

// Key under Namespace::kSession: "{clientId}:{sessionId}". A client can only
// ever address sessions carrying its own id.
std::string SessionKey(const ClientId& client_id, std::string_view session_id);

// "PREFIX:key", the flat form a shared key-value backend would see.
std::string QualifiedKey(Namespace ns, std::string_view key);

enum class UpdateOutcome { kAbsent, kRejected, kUpdated };

// Ephemeral, TTL-enforced key-value storage. Entries are unreadable from
// their expiry instant onwards.
class SessionStore {
 public:
  // Returns the replacement value, or nullopt to leave the entry untouched.
  using Mutator =
      std::function<std::optional<std::string>(const std::string& current)>;

  virtual ~SessionStore() = default;

  // Inserts or replaces. `ttl` must be positive.
  virtual void Put(Namespace ns, std::string_view key, std::string value,
                   Duration ttl) = 0;
  virtual std::optional<std::string> Get(Namespace ns,
                                         std::string_view key) const = 0;
  // Atomic read-and-delete: of any number of concurrent callers on one key,
  // exactly one observes the value.
  virtual std::optional<std::string> Take(Namespace ns,
                                          std::string_view key) = 0;
  // Atomic read-modify-write preserving the entry's expiry.
  virtual UpdateOutcome Update(Namespace ns, std::string_view key,
                               const Mutator& mutate) = 0;
  // Remaining lifetime of a live entry.
  virtual std::optional<Duration> TimeToLive(Namespace ns,
                                             std::string_view key) const = 0;
  // Drops every entry with expires_at <= now; returns how many.
  virtual size_t PurgeExpired() = 0;
};

class InMemorySessionStore final : public SessionStore {
 public:
  explicit InMemorySessionStore(const Clock& clock) : clock_(clock) {}

  void Put(Namespace ns, std::string_view key, std::string value,
           Duration ttl) override;
  std::optional<std::string> Get(Namespace ns,
                                 std::string_view key) const override;
  std::optional<std::string> Take(Namespace ns, std::string_view key) override;
  UpdateOutcome Update(Namespace ns, std::string_view key,
                       const Mutator& mutate) override;
  std::optional<Duration> TimeToLive(Namespace ns,
                                     std::string_view key) const override;
  size_t PurgeExpired() override;

  // Entries physically held, expired or not.
  size_t size() const;

 private:
  struct Entry {
    std::string value;
    Timestamp expires_at;
  };
  using Table = std::unordered_map<std::string, Entry>;

  Table& table(Namespace ns) { return tables_[static_cast<size_t>(ns)]; }
  const Table& table(Namespace ns) const {
    return tables_[static_cast<size_t>(ns)];
  }

  const Clock& clock_;
  mutable std::mutex mu_;
  std::array<Table, kAllNamespaces.size()> tables_;
};

}  // namespace vcbridge

#endif  // VCBRIDGE_STORE_SESSION_STORE_H_
