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

#include <gtest/gtest.h>

#include "vcbridge/threats/harness.h"

namespace vcbridge {
namespace {

const AttackScenario& ScenarioById(const std::string& id) {
  for (const auto& s : AttackScenarios()) {
    if (s.id == id) return s;
  }
  throw std::out_of_range(id);
}

TEST(HarnessTest, MatrixShape) {
  const auto& all = AttackScenarios();
  ASSERT_EQ(all.size(), 11u);
  for (size_t i = 0; i < all.size(); ++i) {
    EXPECT_EQ(all[i].id, "AT." + std::to_string(i + 1));
    EXPECT_NE(ControlName(all[i].primary_control), "");
  }
  EXPECT_EQ(ControlName("IS.1"), "PKCE");
  EXPECT_EQ(ScenarioById("AT.1").primary_control, "IS.1");
  EXPECT_EQ(ScenarioById("AT.7").primary_control, "IS.2");
  EXPECT_EQ(ScenarioById("AT.10").primary_control, "IS.4");
}

TEST(HarnessTest, CodeInterception) {
  auto out = RunScenario("AT.1");
  ASSERT_TRUE(out.ok());
  EXPECT_TRUE(out->blocked);
  EXPECT_EQ(out->observed_error, "invalid_grant");
  EXPECT_EQ(out->observed_control, "IS.1");
  EXPECT_TRUE(out->Passed(ScenarioById("AT.1")));
}

TEST(HarnessTest, PresentationReplay) {
  auto out = RunScenario("at7");
  ASSERT_TRUE(out.ok());
  EXPECT_EQ(out->id, "AT.7");
  EXPECT_EQ(out->observed_error, "nonce_replayed");
  EXPECT_TRUE(out->Passed(ScenarioById("AT.7")));
}

TEST(HarnessTest, CrossTenantAccess) {
  auto out = RunScenario("AT10");
  ASSERT_TRUE(out.ok());
  EXPECT_EQ(out->observed_error, "unauthorized");
  EXPECT_TRUE(out->Passed(ScenarioById("AT.10")));
}

TEST(HarnessTest, UnknownScenario) {
  auto out = RunScenario("AT.12");
  ASSERT_FALSE(out.ok());
  EXPECT_EQ(out.error().code, "unknown_scenario");
  EXPECT_FALSE(RunScenario("bogus").ok());
}

TEST(HarnessTest, AllBlocked) {
  auto outcomes = RunAll();
  ASSERT_EQ(outcomes.size(), 11u);
  for (size_t i = 0; i < outcomes.size(); ++i) {
    const auto& s = AttackScenarios()[i];
    EXPECT_TRUE(outcomes[i].Passed(s))
        << s.id << " observed " << outcomes[i].observed_control << " "
        << outcomes[i].observed_error;
    EXPECT_EQ(outcomes[i].observed_control, s.primary_control) << s.id;
  }
  EXPECT_TRUE(AllPassed(outcomes));
  std::string report = RenderReport(outcomes);
  EXPECT_NE(report.find("| AT.11 |"), std::string::npos);
  EXPECT_NE(report.find("11/11 blocked"), std::string::npos);
  EXPECT_EQ(report.find("FAIL"), std::string::npos);
}

#ifdef VCBRIDGE_FAULT_INJECTION
TEST(HarnessTest, DisabledPkceIsFlagged) {
  HarnessOptions options;
  options.faults.disable_pkce_check = true;
  auto out = RunScenario("AT.1", options);
  ASSERT_TRUE(out.ok());
  EXPECT_FALSE(out->Passed(ScenarioById("AT.1")));
  std::string report = RenderReport({*out}, options);
  EXPECT_NE(report.find("FAIL (regression)"), std::string::npos);
}

TEST(HarnessTest, DisabledTenantFilterIsFlagged) {
  HarnessOptions options;
  options.faults.disable_tenant_filter = true;
  auto out = RunScenario("AT.10", options);
  ASSERT_TRUE(out.ok());
  EXPECT_FALSE(out->Passed(ScenarioById("AT.10")));
}
#endif

}  // namespace
}  // namespace vcbridge
