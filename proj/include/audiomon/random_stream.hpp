// Copyright 2026 The audiomon Authors
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

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "audiomon/monitor.hpp"

namespace audiomon {

struct RandomStreamConfig {
  int system_services = 2;
  int system_apps = 2;
  int market_apps = 3;
  Ticks max_step = 40;  // ticks between consecutive events
};

struct StepResult {
  Ticks time = 0;
  std::string op;
  std::optional<Decision> decision;
  std::vector<RevocationRecord> revocations;
  bool rejected = false;  // an invalid stop was refused with an error
};

// Drives one monitor with random processes (all three classes, random
// permissions and callbacks), a random owner, and random device, content,
// lock and screen events. Deterministic for a given seed.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, MonitorMode mode, RandomStreamConfig config = {});

  StepResult step();

  ReferenceMonitor& monitor() { return monitor_; }
  const std::vector<Pid>& pids() const { return pids_; }

 private:
  Pid random_pid();
  ContentTag random_content();

  std::mt19937_64 rng_;
  RandomStreamConfig config_;
  ReferenceMonitor monitor_;
  std::vector<Pid> pids_;
  Ticks now_ = 0;
};

struct FuzzConfig {
  std::size_t streams = 10000;
  std::size_t events_per_stream = 40;
  std::uint64_t seed = 1;
  std::vector<MonitorMode> modes = {MonitorMode::BaseAndroid,     MonitorMode::SimpleIsolation,
                                    MonitorMode::MlsOnly,         MonitorMode::MlsUserApproval,
                                    MonitorMode::MlsResolver1,    MonitorMode::MlsResolver2,
                                    MonitorMode::Full};
};

struct FuzzReport {
  std::size_t streams = 0;
  std::size_t requests = 0;
  std::size_t grants = 0;
  std::size_t revocations = 0;
  std::size_t soundness_violations = 0;
  std::size_t mediation_mismatches = 0;
  std::size_t notification_mismatches = 0;
  std::size_t exclusivity_violations = 0;
  std::vector<std::string> failures;  // first few, for diagnostics

  bool ok() const {
    return soundness_violations == 0 && mediation_mismatches == 0 &&
           notification_mismatches == 0 && exclusivity_violations == 0;
  }
};

// Runs `streams` random streams, cycling through `modes`, and checks
// soundness, complete mediation, notification and microphone exclusivity
// after every event.
FuzzReport run_random_streams(const FuzzConfig& config);

}  // namespace audiomon
