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

#ifndef VCBRIDGE_COMMON_FAULT_INJECTION_H_
#define VCBRIDGE_COMMON_FAULT_INJECTION_H_

namespace vcbridge {

// Switches that deliberately break a security control so the threat harness
// can prove it notices. They only take effect in builds configured with
// VCBRIDGE_FAULT_INJECTION; release builds compile the bypasses out.
struct FaultInjection {
  bool disable_pkce_check = false;
  bool disable_tenant_filter = false;
};

#ifdef VCBRIDGE_FAULT_INJECTION
inline constexpr bool kFaultInjectionCompiled = true;
#else
inline constexpr bool kFaultInjectionCompiled = false;
#endif

}  // namespace vcbridge

#endif  // VCBRIDGE_COMMON_FAULT_INJECTION_H_
