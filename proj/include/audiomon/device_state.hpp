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

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "audiomon/lattice.hpp"

namespace audiomon {

using Ticks = std::int64_t;

enum class DeviceKind : std::uint8_t { Microphone, Speaker };

enum class ContentTag : std::uint8_t { ApprovedAudio, Arbitrary };

struct SessionId {
  std::uint64_t value = 0;

  friend auto operator<=>(const SessionId&, const SessionId&) = default;
};

struct AudioSession {
  SessionId id;
  Pid pid = 0;
  DeviceKind device = DeviceKind::Speaker;
  Ticks started_at = 0;
  ContentTag content = ContentTag::Arbitrary;
};

struct DeviceMutation {
  enum class Kind : std::uint8_t { Open, Close };
  Kind kind;
  AudioSession session;
  Ticks at;
};

// Sessions on the two audio devices plus the owner-authentication and screen
// flags. The microphone is exclusive; the speaker mixes any number of
// sessions.
class DeviceState {
 public:
  using Observer = std::function<void(const DeviceMutation&)>;

  // Throws DeviceBusyError if the microphone is already held.
  AudioSession open_session(Pid pid, DeviceKind device, ContentTag content, Ticks now);
  // Throws UnknownSessionError.
  AudioSession close_session(SessionId id);

  const std::optional<AudioSession>& mic_session() const { return mic_session_; }
  const std::vector<AudioSession>& speaker_sessions() const { return speaker_sessions_; }
  const AudioSession* find_session(SessionId id) const;
  // Every active session, microphone first.
  std::vector<AudioSession> active_sessions() const;

  bool mic_in_use() const { return mic_session_.has_value(); }

  bool owner_authenticated() const { return owner_authenticated_; }
  void set_owner_authenticated(bool flag) { owner_authenticated_ = flag; }
  bool screen_on() const { return screen_on_; }
  void set_screen_on(bool flag) { screen_on_ = flag; }

  Ticks clock() const { return clock_; }
  // Throws ClockError when `now` is earlier than the current clock.
  void advance_clock(Ticks now);

  // Test instrumentation: observes every open/close.
  void set_observer(Observer observer) { observer_ = std::move(observer); }

 private:
  void notify(DeviceMutation::Kind kind, const AudioSession& s);

  std::optional<AudioSession> mic_session_;
  std::vector<AudioSession> speaker_sessions_;
  bool owner_authenticated_ = false;
  bool screen_on_ = true;
  Ticks clock_ = 0;
  std::uint64_t next_session_ = 1;
  Observer observer_;
};

std::string to_string(DeviceKind d);
std::string to_string(ContentTag c);

}  // namespace audiomon
