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

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "audiomon/channel.hpp"
#include "audiomon/monitor.hpp"
#include "audiomon/process.hpp"
#include "audiomon/trusted_path.hpp"
#include "json.hpp"

namespace audiomon {

enum class ScenarioKind : std::uint8_t { Attack, App };

namespace event {

struct Spawn {
  ProcessRecord process;
};
struct SetAuth {
  bool authenticated = false;
};
struct SetScreen {
  bool on = true;
};
struct StartInput {
  Pid pid = 0;
  ContentTag content = ContentTag::Arbitrary;
};
struct StartOutput {
  Pid pid = 0;
  ContentTag content = ContentTag::Arbitrary;
};
struct StopInput {
  Pid pid = 0;
};
struct StopOutput {
  Pid pid = 0;
};
// Someone speaks to the device. Recorded in the trace with the receiver.
struct ExternalUtterance {
  bool authenticated = false;
};
// The compromising flow is in place iff `pid` holds a session on `device`
// when the assertion is evaluated.
struct AttackRealized {
  Pid pid = 0;
  DeviceKind device = DeviceKind::Speaker;
};

}  // namespace event

using EventAction =
    std::variant<event::Spawn, event::SetAuth, event::SetScreen, event::StartInput,
                 event::StartOutput, event::StopInput, event::StopOutput,
                 event::ExternalUtterance, event::AttackRealized>;

struct ScenarioEvent {
  Ticks time = 0;
  EventAction action;
};

struct Scenario {
  std::string name;
  std::string title;
  ScenarioKind kind = ScenarioKind::Attack;
  int order = 0;
  std::optional<int> attack_scenario;
  std::optional<ChannelKind> channel_type;
  // Pid whose decisions determine the app result.
  std::optional<Pid> subject;
  std::vector<ProcessRecord> processes;
  ApprovalScript oracle;
  std::optional<Ticks> ttl;
  std::vector<ScenarioEvent> events;
  std::string source;  // file path or "<memory>"
};

// Throws MalformedScenarioError naming the file and event index.
Scenario parse_scenario(const nlohmann::json& doc, const std::string& source = "<memory>");
Scenario load_scenario(const std::filesystem::path& path);
// Every *.json in `dir` (non-recursive), ordered by (order, name).
std::vector<Scenario> load_corpus(const std::filesystem::path& dir);

std::string to_string(ScenarioKind kind);
std::string event_name(const EventAction& action);

}  // namespace audiomon
