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

#include <atomic>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "vcbridge/store/session_store.h"

namespace vcbridge {
namespace {

using std::chrono::minutes;
using std::chrono::seconds;

class SessionStoreTest : public ::testing::Test {
 protected:
  ManualClock clock_;
  InMemorySessionStore store_{clock_};
};

TEST_F(SessionStoreTest, SessionSurvives29Minutes) {
  store_.Put(Namespace::kSession, "k", "v", minutes(30));
  clock_.Advance(minutes(29));
  EXPECT_EQ(store_.Get(Namespace::kSession, "k"), "v");
}

TEST_F(SessionStoreTest, AuthCodeGoneAfter11Minutes) {
  store_.Put(Namespace::kAuthCode, "k", "v", minutes(10));
  clock_.Advance(minutes(11));
  EXPECT_EQ(store_.Get(Namespace::kAuthCode, "k"), std::nullopt);
}

TEST_F(SessionStoreTest, LastWriteWins) {
  store_.Put(Namespace::kSession, "k", "old", minutes(1));
  store_.Put(Namespace::kSession, "k", "new", minutes(1));
  EXPECT_EQ(store_.Get(Namespace::kSession, "k"), "new");
}

TEST_F(SessionStoreTest, NeverWrittenIsAbsent) {
  EXPECT_EQ(store_.Get(Namespace::kSession, "nope"), std::nullopt);
}

TEST_F(SessionStoreTest, ExpiryBoundaryIsExclusive) {
  store_.Put(Namespace::kAuthToken, "k", "v", minutes(5));
  clock_.Advance(minutes(5) - std::chrono::nanoseconds(1));
  EXPECT_EQ(store_.Get(Namespace::kAuthToken, "k"), "v");
  clock_.Advance(std::chrono::nanoseconds(1));
  EXPECT_EQ(store_.Get(Namespace::kAuthToken, "k"), std::nullopt);
  EXPECT_EQ(store_.Take(Namespace::kAuthToken, "k"), std::nullopt);
}

TEST_F(SessionStoreTest, TakeIsSingleUse) {
  store_.Put(Namespace::kAuthCode, "k", "v", minutes(10));
  EXPECT_EQ(store_.Take(Namespace::kAuthCode, "k"), "v");
  EXPECT_EQ(store_.Take(Namespace::kAuthCode, "k"), std::nullopt);
  EXPECT_EQ(store_.Get(Namespace::kAuthCode, "k"), std::nullopt);
}

TEST_F(SessionStoreTest, TakeOfExpiredKeyIsAbsent) {
  store_.Put(Namespace::kAuthCode, "k", "v", minutes(10));
  clock_.Advance(minutes(10));
  EXPECT_EQ(store_.Take(Namespace::kAuthCode, "k"), std::nullopt);
}

TEST_F(SessionStoreTest, ConcurrentTakesHaveOneWinner) {
  for (int round = 0; round < 50; ++round) {
    std::string key = "code-" + std::to_string(round);
    store_.Put(Namespace::kAuthCode, key, "v", minutes(10));
    std::atomic<int> winners{0};
    std::atomic<bool> go{false};
    std::vector<std::thread> threads;
    for (int i = 0; i < 16; ++i) {
      threads.emplace_back([&] {
        while (!go) std::this_thread::yield();
        if (store_.Take(Namespace::kAuthCode, key)) ++winners;
      });
    }
    go = true;
    for (auto& t : threads) t.join();
    EXPECT_EQ(winners.load(), 1) << "round " << round;
  }
}

TEST_F(SessionStoreTest, NamespacesAreDisjoint) {
  store_.Put(Namespace::kSession, "k", "session", minutes(1));
  store_.Put(Namespace::kAuthCode, "k", "code", minutes(1));
  EXPECT_EQ(store_.Get(Namespace::kSession, "k"), "session");
  EXPECT_EQ(store_.Get(Namespace::kAuthCode, "k"), "code");
  EXPECT_EQ(store_.Get(Namespace::kChallenge, "k"), std::nullopt);
}

TEST_F(SessionStoreTest, KeyLayout) {
  EXPECT_EQ(SessionKey(ClientId("c1"), "s1"), "c1:s1");
  EXPECT_EQ(QualifiedKey(Namespace::kSession, SessionKey(ClientId("c1"), "s1")),
            "SESSION:c1:s1");
  EXPECT_EQ(NamespacePrefix(Namespace::kAuthToken), "AUTH_TOKEN");
  EXPECT_EQ(NamespacePrefix(Namespace::kAuthCode), "AUTH_CODE");
  EXPECT_EQ(NamespacePrefix(Namespace::kChallenge), "CHALLENGE");
}

TEST_F(SessionStoreTest, PurgeCountsExpiredOnly) {
  for (int i = 0; i < 3; ++i) {
    store_.Put(Namespace::kChallenge, "old" + std::to_string(i), "x", minutes(1));
  }
  store_.Put(Namespace::kSession, "live1", "a", minutes(30));
  store_.Put(Namespace::kAuthCode, "live2", "b", minutes(30));
  clock_.Advance(minutes(1));
  EXPECT_EQ(store_.PurgeExpired(), 3u);
  EXPECT_EQ(store_.size(), 2u);
  EXPECT_EQ(store_.Get(Namespace::kSession, "live1"), "a");
  EXPECT_EQ(store_.Get(Namespace::kAuthCode, "live2"), "b");
}

TEST_F(SessionStoreTest, PurgeEmptyAndAllExpired) {
  EXPECT_EQ(store_.PurgeExpired(), 0u);
  for (int i = 0; i < 25; ++i) {
    store_.Put(Namespace::kSession, std::to_string(i), "x", seconds(1 + i));
  }
  clock_.Advance(minutes(1));
  EXPECT_EQ(store_.PurgeExpired(), 25u);
  EXPECT_EQ(store_.size(), 0u);
}

TEST_F(SessionStoreTest, UpdateKeepsExpiry) {
  store_.Put(Namespace::kSession, "k", "1", minutes(30));
  clock_.Advance(minutes(10));
  auto outcome = store_.Update(Namespace::kSession, "k",
                               [](const std::string& v) { return v + "2"; });
  EXPECT_EQ(outcome, UpdateOutcome::kUpdated);
  EXPECT_EQ(store_.Get(Namespace::kSession, "k"), "12");
  EXPECT_EQ(store_.TimeToLive(Namespace::kSession, "k"), Duration(minutes(20)));
  EXPECT_EQ(store_.Update(Namespace::kSession, "k",
                          [](const std::string&) { return std::nullopt; }),
            UpdateOutcome::kRejected);
  clock_.Advance(minutes(20));
  EXPECT_EQ(store_.Update(Namespace::kSession, "k",
                          [](const std::string& v) { return v; }),
            UpdateOutcome::kAbsent);
}

}  // namespace
}  // namespace vcbridge
