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

// threats: runs the attack scenarios against an in-process deployment and
// writes the traceability report.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "vcbridge/threats/harness.h"

int main(int argc, char** argv) {
  CLI::App app{"Threat scenario harness"};
  app.require_subcommand(1);
  auto* run = app.add_subcommand("run", "Run attack scenarios");
  std::vector<std::string> scenarios;
  std::string report_path;
  std::vector<std::string> faults;
  run->add_option("--scenario", scenarios, "Scenario id, e.g. AT7 (repeatable)");
  run->add_option("--report", report_path, "Write the Markdown report here");
  run->add_option("--inject-fault", faults, "Disable a control: pkce, tenant-filter")
      ->check(CLI::IsMember({"pkce", "tenant-filter"}));
  CLI11_PARSE(app, argc, argv);

  vcbridge::HarnessOptions options;
  for (const auto& f : faults) {
    if (f == "pkce") options.faults.disable_pkce_check = true;
    if (f == "tenant-filter") options.faults.disable_tenant_filter = true;
  }
  if (!faults.empty() && !vcbridge::kFaultInjectionCompiled) {
    std::cerr << "this build has fault injection compiled out "
                 "(VCBRIDGE_FAULT_INJECTION=OFF)\n";
    return 2;
  }

  std::vector<vcbridge::ScenarioOutcome> outcomes;
  if (scenarios.empty()) {
    outcomes = vcbridge::RunAll(options);
  } else {
    for (const auto& id : scenarios) {
      auto outcome = vcbridge::RunScenario(id, options);
      if (!outcome.ok()) {
        std::cerr << outcome.error().code << ": " << outcome.error().description
                  << "\n";
        return 2;
      }
      outcomes.push_back(std::move(*outcome));
    }
  }

  std::string report = vcbridge::RenderReport(outcomes, options);
  std::cout << report;
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    out << report;
    if (!out) {
      std::cerr << "cannot write " << report_path << "\n";
      return 2;
    }
  }
  return vcbridge::AllPassed(outcomes) ? 0 : 1;
}
