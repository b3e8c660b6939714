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

#include "vcbridge/store/session_store.h"

#include <stdexcept>

namespace vcbridge {

std::string_view NamespacePrefix(Namespace ns) {
  switch (ns) {
    case Namespace::kSession:
      return "SESSION";
    case Namespace::kAuthToken:
      return "AUTH_TOKEN";
    case Namespace::kAuthCode:
      return "AUTH_CODE";
    case Namespace::kChallenge:
      return "CHALLENGE";
  }
  return "UNKNOWN";
}

std::string SessionKey(const ClientId& client_id,
                       std::string_view session_id) {
  std::string key = client_id.value();
  key.push_back(':');
  key.append(session_id);
  return key;
}

std::string QualifiedKey(Namespace ns, std::string_view key) {
  std::string out(NamespacePrefix(ns));
  out.push_back(':');
  out.append(key);
  return out;
}

void InMemorySessionStore::Put(Namespace ns, std::string_view key,
                               std::string value, Duration ttl) {
  if (ttl <= Duration::zero()) {
    throw std::invalid_argument("SessionStore::Put requires a positive ttl");
  }
  Timestamp expires_at = clock_.Now() + ttl;
  std::lock_guard lock(mu_);
  table(ns).insert_or_assign(std::string(key),
                             Entry{std::move(value), expires_at});
}

std::optional<std::string> InMemorySessionStore::Get(
    Namespace ns, std::string_view key) const {
  Timestamp now = clock_.Now();
  std::lock_guard lock(mu_);
  const Table& t = table(ns);
  auto it = t.find(std::string(key));
  if (it == t.end() || now >= it->second.expires_at) return std::nullopt;
  return it->second.value;
}

std::optional<std::string> InMemorySessionStore::Take(Namespace ns,
                                                      std::string_view key) {
  Timestamp now = clock_.Now();
  std::lock_guard lock(mu_);
  Table& t = table(ns);
  auto it = t.find(std::string(key));
  if (it == t.end()) return std::nullopt;
  std::optional<std::string> value;
  if (now < it->second.expires_at) value = std::move(it->second.value);
  t.erase(it);
  return value;
}

UpdateOutcome InMemorySessionStore::Update(Namespace ns, std::string_view key,
                                           const Mutator& mutate) {
  Timestamp now = clock_.Now();
  std::lock_guard lock(mu_);
  Table& t = table(ns);
  auto it = t.find(std::string(key));
  if (it == t.end() || now >= it->second.expires_at) {
    return UpdateOutcome::kAbsent;
  }
  std::optional<std::string> next = mutate(it->second.value);
  if (!next) return UpdateOutcome::kRejected;
  it->second.value = std::move(*next);
  return UpdateOutcome::kUpdated;
}

std::optional<Duration> InMemorySessionStore::TimeToLive(
    Namespace ns, std::string_view key) const {
  Timestamp now = clock_.Now();
  std::lock_guard lock(mu_);
  const Table& t = table(ns);
  auto it = t.find(std::string(key));
  if (it == t.end() || now >= it->second.expires_at) return std::nullopt;
  return it->second.expires_at - now;
}

size_t InMemorySessionStore::PurgeExpired() {
  Timestamp now = clock_.Now();
  std::lock_guard lock(mu_);
  size_t removed = 0;
  for (Table& t : tables_) {
    removed += std::erase_if(
        t, [now](const auto& kv) { return kv.second.expires_at <= now; });
  }
  return removed;
}

size_t InMemorySessionStore::size() const {
  std::lock_guard lock(mu_);
  size_t n = 0;
  for (const Table& t : tables_) n += t.size();
  return n;
}

}  // namespace vcbridge
