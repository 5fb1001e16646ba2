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

#include "audiomon/channel.hpp"

#include <algorithm>

#include "audiomon/process.hpp"

namespace audiomon {

Label external_label(ExternalDirection direction, bool authenticated) {
  if (authenticated) return high_label();
  if (direction == ExternalDirection::ListensToSpeaker) {
    return {Secrecy::Low, Integrity::High, std::nullopt};
  }
  return {Secrecy::High, Integrity::Low, std::nullopt};
}

std::vector<AudioChannel> derive_channels(const ChannelRequest& request,
                                          const DeviceState& state) {
  const bool auth = state.owner_authenticated();
  const Endpoint self{request.pid, label_for_pid(request.pid)};
  std::vector<AudioChannel> out;
  if (request.device == DeviceKind::Speaker) {
    out.push_back({ChannelKind::SpeakerToExternal, self,
                   Endpoint{std::nullopt,
                            external_label(ExternalDirection::ListensToSpeaker, auth)},
                   std::nullopt, request.content});
    if (const auto& mic = state.mic_session()) {
      out.push_back({ChannelKind::SpeakerToMic, self,
                     Endpoint{mic->pid, label_for_pid(mic->pid)}, mic->id,
                     request.content});
    }
  } else {
    out.push_back(
        {ChannelKind::ExternalToMic,
         Endpoint{std::nullopt, external_label(ExternalDirection::SpeaksToMic, auth)},
         self, std::nullopt, ContentTag::Arbitrary});
    for (const auto& spk : state.speaker_sessions()) {
      out.push_back({ChannelKind::SpeakerToMic, Endpoint{spk.pid, label_for_pid(spk.pid)},
                     self, spk.id, spk.content});
    }
  }
  return out;
}

std::string channel_set_digest(std::span<const AudioChannel> channels) {
  std::vector<std::string> parts;
  parts.reserve(channels.size());
  for (const auto& c : channels) parts.push_back(to_string(c));
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& p : parts) {
    out += p;
    out += ';';
  }
  return out;
}

std::string to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::SpeakerToMic:
      return "type1";
    case ChannelKind::SpeakerToExternal:
      return "type2";
    case ChannelKind::ExternalToMic:
      return "type3";
  }
  return "?";
}

std::string to_string(const Endpoint& e) {
  const std::string who = e.pid ? "pid " + std::to_string(*e.pid) : "external";
  return who + " " + to_string(e.label);
}

std::string to_string(const AudioChannel& c) {
  return to_string(c.kind) + ": " + to_string(c.source) + " -> " + to_string(c.sink);
}

}  // namespace audiomon
