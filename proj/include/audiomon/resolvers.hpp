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
#include <string>

#include "audiomon/channel.hpp"
#include "audiomon/process.hpp"

namespace audiomon {

enum class ResolutionKind : std::uint8_t { ResolverApplied, OwnerApproved, CacheHit };

struct ResolutionRecord {
  ResolutionKind kind = ResolutionKind::ResolverApplied;
  std::optional<ResolverId> resolver;  // set iff kind == ResolverApplied
  AudioChannel channel;
  // Privileged process that accepted the resolver, when one was at risk.
  std::optional<Pid> approved_by;
};

// Suggests the vetted resolver for an unsafe flow, if any.
//
//  ApprovedSystemAudio: a system app/service plays approved audio (ring
//    tones, notification sounds) to an unauthenticated listener (LS,HI);
//    covers the secrecy violation only.
//  ApprovedMarketAudio: a market app plays approved audio to a
//    high-integrity sink, external or internal; covers the integrity
//    violation only.
//
// Arbitrary content is never resolvable.
std::optional<ResolverId> propose(const AudioChannel& channel, FlowVerdict verdict,
                                  ContentTag content);

// The privileged internal endpoint whose secrecy (source) or integrity (sink)
// the violation endangers. nullopt when only the external party is at risk.
std::optional<Pid> at_risk_party(const AudioChannel& channel, FlowVerdict verdict);

// Asks the at-risk process to accept `resolver` through its scripted
// callback. With no internal party at risk the negotiation is vacuous and
// succeeds. A missing callback, an unknown pid or a market app all reject.
bool negotiate(ResolverId resolver, std::optional<Pid> at_risk,
               const ProcessRegistry& registry);

std::string to_string(ResolutionKind kind);

}  // namespace audiomon
