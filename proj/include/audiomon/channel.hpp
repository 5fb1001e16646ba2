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
#include <span>
#include <string>
#include <vector>

#include "audiomon/device_state.hpp"
#include "audiomon/lattice.hpp"

namespace audiomon {

enum class ChannelKind : std::uint8_t {
  SpeakerToMic,       // Type 1
  SpeakerToExternal,  // Type 2
  ExternalToMic,      // Type 3
};

// Which way the external party faces the device.
enum class ExternalDirection : std::uint8_t { ListensToSpeaker, SpeaksToMic };

// One end of a channel. An absent pid denotes the external party.
struct Endpoint {
  std::optional<Pid> pid;
  Label label;

  bool is_external() const { return !pid.has_value(); }

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

struct AudioChannel {
  ChannelKind kind = ChannelKind::SpeakerToExternal;
  Endpoint source;
  Endpoint sink;
  // Session on the opposite device that closes a Type 1 channel.
  std::optional<SessionId> peer_session;
  // What the source emits. External sources are always Arbitrary.
  ContentTag source_content = ContentTag::Arbitrary;

  friend bool operator==(const AudioChannel&, const AudioChannel&) = default;
};

struct ChannelRequest {
  Pid pid = 0;
  DeviceKind device = DeviceKind::Speaker;
  ContentTag content = ContentTag::Arbitrary;
};

// Unauthenticated listener (LS,HI), unauthenticated speaker (HS,LI); an
// authenticated owner is (HS,HI) in both directions.
Label external_label(ExternalDirection direction, bool authenticated);

// Channels that granting `request` would create: one external-facing channel
// plus one Type 1 channel per session on the opposite device.
std::vector<AudioChannel> derive_channels(const ChannelRequest& request,
                                          const DeviceState& state);

// Order-insensitive key of a channel set; peer session ids are ignored.
std::string channel_set_digest(std::span<const AudioChannel> channels);

std::string to_string(ChannelKind kind);  // "type1" / "type2" / "type3"
std::string to_string(const Endpoint& e);
std::string to_string(const AudioChannel& c);

}  // namespace audiomon
