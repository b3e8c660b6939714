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

#ifndef VCBRIDGE_COMMON_CLOCK_H_
#define VCBRIDGE_COMMON_CLOCK_H_

#include <chrono>
#include <cstdint>
#include <mutex>

namespace vcbridge {

using Timestamp = std::chrono::system_clock::time_point;
using Duration = std::chrono::system_clock::duration;

// Every TTL decision in the system reads time through this interface.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual Timestamp Now() const = 0;
};

class SystemClock final : public Clock {
 public:
  Timestamp Now() const override { return std::chrono::system_clock::now(); }
};

// Test clock. Starts at a fixed whole-second instant so epoch-second claims
// are exact.
class ManualClock final : public Clock {
 public:
  ManualClock()
      : now_(Timestamp(std::chrono::seconds(1'767'225'600))) {}  // 2026-01-01
  explicit ManualClock(Timestamp start) : now_(start) {}

  Timestamp Now() const override {
    std::lock_guard lock(mu_);
    return now_;
  }

  void Advance(Duration d) {
    std::lock_guard lock(mu_);
    now_ += d;
  }

  void Set(Timestamp t) {
    std::lock_guard lock(mu_);
    now_ = t;
  }

 private:
  mutable std::mutex mu_;
  Timestamp now_;
};

inline std::int64_t ToEpochSeconds(Timestamp t) {
  return std::chrono::duration_cast<std::chrono::seconds>(t.time_since_epoch())
      .count();
}

inline Timestamp FromEpochSeconds(std::int64_t s) {
  return Timestamp(std::chrono::seconds(s));
}

}  // namespace vcbridge

#endif  // VCBRIDGE_COMMON_CLOCK_H_
