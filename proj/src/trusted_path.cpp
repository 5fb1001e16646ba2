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

#include "audiomon/trusted_path.hpp"

namespace audiomon {

ApprovalOracle::ApprovalOracle(ApprovalScript script) {
  predicate_ = [s = std::move(script)](Pid pid,
                                       std::span<const AudioChannel>) mutable {
    if (const auto it = s.by_pid.find(pid); it != s.by_pid.end()) return it->second;
    if (!s.sequence.empty()) {
      const Approval next = s.sequence.front();
      s.sequence.pop_front();
      return next;
    }
    return s.fallback;
  };
}

ApprovalOracle ApprovalOracle::always(Approval answer) {
  ApprovalScript script;
  script.fallback = answer;
  return ApprovalOracle(std::move(script));
}

Approval ApprovalOracle::consult(Pid pid, std::span<const AudioChannel> channels) {
  ++prompt_count_;
  ++prompts_by_pid_[pid];
  return predicate_(pid, channels);
}

int ApprovalOracle::prompt_count(Pid pid) const {
  const auto it = prompts_by_pid_.find(pid);
  return it == prompts_by_pid_.end() ? 0 : it->second;
}

std::optional<Approval> EventCache::lookup(Pid pid, const std::string& digest,
                                           Ticks now) const {
  const auto it = entries_.find({pid, digest});
  if (it == entries_.end()) return std::nullopt;
  if (now - it->second.inserted_at >= ttl_) return std::nullopt;
  return it->second.answer;
}

void EventCache::insert(Pid pid, const std::string& digest, Approval answer, Ticks now) {
  entries_[{pid, digest}] = Entry{answer, now};
}

ApprovalResult TrustedPath::request_owner_approval(Pid pid,
                                                   std::span<const AudioChannel> channels,
                                                   Ticks now) {
  const std::string digest = channel_set_digest(channels);
  if (const auto cached = cache_.lookup(pid, digest, now)) {
    return {*cached, ApprovalSource::Cache};
  }
  const Approval answer = oracle_.consult(pid, channels);
  cache_.insert(pid, digest, answer, now);
  return {answer, ApprovalSource::Prompt};
}

NotificationState update_notifications(const DeviceState& state) {
  return notification_for(state.mic_in_use(), state.screen_on());
}

std::string to_string(Approval a) { return a == Approval::Approve ? "approve" : "deny"; }

}  // namespace audiomon
