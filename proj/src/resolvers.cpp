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

#include "audiomon/resolvers.hpp"

namespace audiomon {

namespace {

bool internal_of_class(const Endpoint& e, bool privileged) {
  return e.pid && is_privileged(classify_pid(*e.pid)) == privileged;
}

}  // namespace

std::optional<ResolverId> propose(const AudioChannel& channel, FlowVerdict verdict,
                                  ContentTag content) {
  if (content != ContentTag::ApprovedAudio) return std::nullopt;

  const Label listener = external_label(ExternalDirection::ListensToSpeaker, false);
  if (verdict == FlowVerdict::SecrecyViolation &&
      internal_of_class(channel.source, true) && channel.sink.is_external() &&
      channel.sink.label == listener) {
    return ResolverId::ApprovedSystemAudio;
  }
  if (verdict == FlowVerdict::IntegrityViolation &&
      internal_of_class(channel.source, false) &&
      channel.sink.label.integrity == Integrity::High) {
    return ResolverId::ApprovedMarketAudio;
  }
  return std::nullopt;
}

std::optional<Pid> at_risk_party(const AudioChannel& channel, FlowVerdict verdict) {
  if (has_secrecy_violation(verdict) && internal_of_class(channel.source, true)) {
    return channel.source.pid;
  }
  if (has_integrity_violation(verdict) && internal_of_class(channel.sink, true)) {
    return channel.sink.pid;
  }
  return std::nullopt;
}

bool negotiate(ResolverId resolver, std::optional<Pid> at_risk,
               const ProcessRegistry& registry) {
  if (!at_risk) return true;
  const ProcessRecord* p = registry.find(*at_risk);
  if (p == nullptr || !is_privileged(p->party_class) || !p->resolver_callback) {
    return false;
  }
  return p->resolver_callback->accepts_resolver(resolver);
}

std::string to_string(ResolutionKind kind) {
  switch (kind) {
    case ResolutionKind::ResolverApplied:
      return "resolver";
    case ResolutionKind::OwnerApproved:
      return "owner_approved";
    case ResolutionKind::CacheHit:
      return "cache_hit";
  }
  return "?";
}

}  // namespace audiomon
