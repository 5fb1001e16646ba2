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

#include "audiomon/device_state.hpp"

#include <algorithm>

#include "audiomon/error.hpp"

namespace audiomon {

AudioSession DeviceState::open_session(Pid pid, DeviceKind device, ContentTag content,
                                       Ticks now) {
  advance_clock(now);
  if (device == DeviceKind::Microphone && mic_session_) {
    throw DeviceBusyError("microphone held by pid " + std::to_string(mic_session_->pid));
  }
  AudioSession s{SessionId{next_session_++}, pid, device, now, content};
  if (device == DeviceKind::Microphone) {
    mic_session_ = s;
  } else {
    speaker_sessions_.push_back(s);
  }
  notify(DeviceMutation::Kind::Open, s);
  return s;
}

AudioSession DeviceState::close_session(SessionId id) {
  if (mic_session_ && mic_session_->id == id) {
    AudioSession s = *mic_session_;
    mic_session_.reset();
    notify(DeviceMutation::Kind::Close, s);
    return s;
  }
  const auto it = std::find_if(speaker_sessions_.begin(), speaker_sessions_.end(),
                               [id](const AudioSession& s) { return s.id == id; });
  if (it == speaker_sessions_.end()) {
    throw UnknownSessionError("no active session " + std::to_string(id.value));
  }
  AudioSession s = *it;
  speaker_sessions_.erase(it);
  notify(DeviceMutation::Kind::Close, s);
  return s;
}

const AudioSession* DeviceState::find_session(SessionId id) const {
  if (mic_session_ && mic_session_->id == id) return &*mic_session_;
  for (const auto& s : speaker_sessions_) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

std::vector<AudioSession> DeviceState::active_sessions() const {
  std::vector<AudioSession> out;
  if (mic_session_) out.push_back(*mic_session_);
  out.insert(out.end(), speaker_sessions_.begin(), speaker_sessions_.end());
  return out;
}

void DeviceState::advance_clock(Ticks now) {
  if (now < clock_) {
    throw ClockError("time went backwards: " + std::to_string(now) + " < " +
                     std::to_string(clock_));
  }
  clock_ = now;
}

void DeviceState::notify(DeviceMutation::Kind kind, const AudioSession& s) {
  if (observer_) observer_(DeviceMutation{kind, s, clock_});
}

std::string to_string(DeviceKind d) {
  return d == DeviceKind::Microphone ? "microphone" : "speaker";
}

std::string to_string(ContentTag c) {
  return c == ContentTag::ApprovedAudio ? "approved" : "arbitrary";
}

}  // namespace audiomon
