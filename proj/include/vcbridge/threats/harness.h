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

#ifndef VCBRIDGE_THREATS_HARNESS_H_
#define VCBRIDGE_THREATS_HARNESS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vcbridge/common/fault_injection.h"
#include "vcbridge/common/result.h"

namespace vcbridge {

// One row of the threat-control traceability matrix.
struct AttackScenario {
  std::string id;  // "AT.1" .. "AT.11"
  std::string threat;
  std::string attack;  // what the script does
  std::string primary_control;  // "IS.1" .. "IS.9"
  std::vector<std::string> supporting_controls;
};

const std::vector<AttackScenario>& AttackScenarios();

// "IS.1" -> "PKCE", ...
std::string_view ControlName(std::string_view control);

// A single attack attempt within a scenario, aimed at one control.
struct ProbeOutcome {
  std::string control;
  std::string description;
  std::string expected_error;
  bool blocked = false;
  std::string observed_error;  // "none" when the attack went through
  std::string detail;
};

struct ScenarioOutcome {
  std::string id;
  bool blocked = false;  // every probe blocked
  std::string observed_error;    // of the primary probe
  std::string observed_control;  // control whose check stopped the primary
                                 // probe, "none" if it was not stopped
  std::vector<ProbeOutcome> probes;

  // Blocked, by the expected checks, with the primary control as listed.
  bool Passed(const AttackScenario& scenario) const;
};

struct HarnessOptions {
  FaultInjection faults;
};

// Accepts "AT.7", "AT7" or "at7". Each run builds a fresh testbed.
Result<ScenarioOutcome> RunScenario(std::string_view id,
                                    const HarnessOptions& options = {});
std::vector<ScenarioOutcome> RunAll(const HarnessOptions& options = {});

// Markdown table in matrix order with a pass/fail column and a summary line.
std::string RenderReport(const std::vector<ScenarioOutcome>& outcomes,
                         const HarnessOptions& options = {});
bool AllPassed(const std::vector<ScenarioOutcome>& outcomes);

}  // namespace vcbridge

#endif  // VCBRIDGE_THREATS_HARNESS_H_
