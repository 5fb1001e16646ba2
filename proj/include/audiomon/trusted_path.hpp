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
#include <deque>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>

#include "audiomon/channel.hpp"
#include "audiomon/device_state.hpp"

namespace audiomon {

enum class Approval : std::uint8_t { Approve, Deny };

// Deterministic stand-in for the device owner. Answers come from, in order:
// a fixed per-pid answer, the next entry of `sequence`, then `fallback`.
struct ApprovalScript {
  Approval fallback = Approval::Deny;
  std::map<Pid, Approval> by_pid;
  std::deque<Approval> sequence;
};

class ApprovalOracle {
 public:
  using Predicate = std::function<Approval(Pid, std::span<const AudioChannel>)>;

  ApprovalOracle() : ApprovalOracle(ApprovalScript{}) {}
  explicit ApprovalOracle(ApprovalScript script);
  explicit ApprovalOracle(Predicate predicate) : predicate_(std::move(predicate)) {}

  static ApprovalOracle always(Approval answer);

  // Shows one prompt to the owner and returns the answer.
  Approval consult(Pid pid, std::span<const AudioChannel> channels);

  int prompt_count() const { return prompt_count_; }
  int prompt_count(Pid pid) const;

 private:
  Predicate predicate_;
  int prompt_count_ = 0;
  std::map<Pid, int> prompts_by_pid_;
};

// Remembers recent owner answers so identical flows within `ttl` ticks are
// resolved without a new prompt. Both approvals and denials are kept.
class EventCache {
 public:
  explicit EventCache(Ticks ttl) : ttl_(ttl) {}

  std::optional<Approval> lookup(Pid pid, const std::string& digest, Ticks now) const;
  void insert(Pid pid, const std::string& digest, Approval answer, Ticks now);
  void clear() { entries_.clear(); }

  Ticks ttl() const { return ttl_; }
  std::size_t size() const { return entries_.size(); }

 private:
  struct Entry {
    Approval answer;
    Ticks inserted_at;
  };
  Ticks ttl_;
  std::map<std::pair<Pid, std::string>, Entry> entries_;
};

enum class ApprovalSource : std::uint8_t { Prompt, Cache };

struct ApprovalResult {
  Approval answer = Approval::Deny;
  ApprovalSource source = ApprovalSource::Prompt;
};

class TrustedPath {
 public:
  TrustedPath(ApprovalOracle oracle, Ticks ttl) : oracle_(std::move(oracle)), cache_(ttl) {}

  // Cache first; on a miss the oracle is prompted and its answer cached.
  ApprovalResult request_owner_approval(Pid pid, std::span<const AudioChannel> channels,
                                        Ticks now);

  void invalidate_cache() { cache_.clear(); }

  const ApprovalOracle& oracle() const { return oracle_; }
  const EventCache& cache() const { return cache_; }

 private:
  ApprovalOracle oracle_;
  EventCache cache_;
};

// Microphone icon while the screen is on, blinking light while it is off.
struct NotificationState {
  bool mic_icon_visible = false;
  bool light_blinking = false;

  friend bool operator==(const NotificationState&, const NotificationState&) = default;
};

constexpr NotificationState notification_for(bool mic_in_use, bool screen_on) {
  return {mic_in_use && screen_on, mic_in_use && !screen_on};
}

NotificationState update_notifications(const DeviceState& state);

std::string to_string(Approval a);

}  // namespace audiomon
