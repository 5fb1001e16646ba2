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

#include "audiomon/monitor.hpp"

#include <algorithm>

#include "audiomon/error.hpp"

namespace audiomon {

namespace {

struct ResolverPass {
  std::vector<ResolutionRecord> resolutions;
  bool rejected = false;  // some resolver was proposed and refused
};

ResolverPass apply_resolvers(const std::vector<Violation>& violations, MonitorMode mode,
                             const ProcessRegistry& registry) {
  ResolverPass pass;
  for (const auto& v : violations) {
    const auto resolver = propose(v.channel, v.verdict, v.channel.source_content);
    if (!resolver || !resolver_enabled(mode, *resolver)) continue;
    const auto at_risk = at_risk_party(v.channel, v.verdict);
    if (negotiate(*resolver, at_risk, registry)) {
      pass.resolutions.push_back(
          {ResolutionKind::ResolverApplied, resolver, v.channel, at_risk});
    } else {
      pass.rejected = true;
    }
  }
  return pass;
}

std::vector<Violation> unsafe_flows(const std::vector<AudioChannel>& channels) {
  std::vector<Violation> out;
  for (const auto& c : channels) {
    const FlowVerdict v = flow_safe(c.source.label, c.sink.label);
    if (v != FlowVerdict::Safe) out.push_back({c, v});
  }
  return out;
}

bool covered(const std::vector<ResolutionRecord>& resolutions, const AudioChannel& c) {
  return std::any_of(resolutions.begin(), resolutions.end(),
                     [&](const ResolutionRecord& r) { return r.channel == c; });
}

Hook stop_hook(DeviceKind d) {
  return d == DeviceKind::Microphone ? Hook::StopInput : Hook::StopOutput;
}

}  // namespace

bool enforces_lattice(MonitorMode mode) {
  return mode != MonitorMode::BaseAndroid && mode != MonitorMode::SimpleIsolation;
}

bool uses_trusted_path(MonitorMode mode) {
  return mode == MonitorMode::MlsUserApproval || mode == MonitorMode::Full;
}

bool resolver_enabled(MonitorMode mode, ResolverId id) {
  if (mode == MonitorMode::Full) return true;
  if (id == ResolverId::ApprovedSystemAudio) return mode == MonitorMode::MlsResolver1;
  return mode == MonitorMode::MlsResolver2;
}

bool Decision::is_resolved(const AudioChannel& channel) const {
  return covered(resolutions, channel);
}

std::vector<Violation> Decision::unresolved() const {
  std::vector<Violation> out;
  for (const auto& v : violations) {
    if (!is_resolved(v.channel)) out.push_back(v);
  }
  return out;
}

ReferenceMonitor::ReferenceMonitor(MonitorConfig config, ApprovalOracle oracle)
    : config_(config), trusted_path_(std::move(oracle), config.ttl) {}

void ReferenceMonitor::register_process(ProcessRecord record) {
  registry_.add(std::move(record));
}

Decision ReferenceMonitor::start_input(Pid pid, ContentTag content, Ticks now) {
  return start(Hook::StartInput, pid, DeviceKind::Microphone, content, now);
}

Decision ReferenceMonitor::start_output(Pid pid, ContentTag content, Ticks now) {
  return start(Hook::StartOutput, pid, DeviceKind::Speaker, content, now);
}

Decision ReferenceMonitor::start(Hook hook, Pid pid, DeviceKind device, ContentTag content,
                                 Ticks now) {
  if (!registry_.contains(pid)) throw UnknownPidError("unknown pid " + std::to_string(pid));
  state_.advance_clock(now);
  Decision d = authorize(AccessRequest{pid, device, content, now});
  if (d.granted()) {
    d.session = state_.open_session(pid, device, content, now).id;
    grants_[*d.session] = d;
  }
  audit_.push_back(AuditRecord{now, hook, pid, d, d.session, false});
  return d;
}

Decision ReferenceMonitor::authorize(const AccessRequest& request) {
  Decision d;
  d.request = request;
  const auto deny = [&d](DenialReason reason) {
    d.outcome = Outcome::Denied;
    d.reason = reason;
    return d;
  };

  const bool mic = request.device == DeviceKind::Microphone;
  // The speaker has never required a permission.
  if (mic && !registry_.check_record_audio_permission(request.pid)) {
    return deny(DenialReason::PermissionDenied);
  }
  if (mic && state_.mic_in_use()) return deny(DenialReason::DeviceBusy);

  d.channels = derive_channels({request.pid, request.device, request.content}, state_);

  switch (config_.mode) {
    case MonitorMode::BaseAndroid:
      break;
    case MonitorMode::SimpleIsolation: {
      const bool conflict =
          mic ? std::any_of(state_.speaker_sessions().begin(),
                            state_.speaker_sessions().end(),
                            [&](const AudioSession& s) { return s.pid != request.pid; })
              : state_.mic_session() && state_.mic_session()->pid != request.pid;
      if (conflict) return deny(DenialReason::IsolationConflict);
      break;
    }
    default:
      enforce_lattice(d);
      return d;
  }
  d.outcome = Outcome::Granted;
  return d;
}

void ReferenceMonitor::enforce_lattice(Decision& d) {
  d.violations = unsafe_flows(d.channels);

  ResolverPass pass = apply_resolvers(d.violations, config_.mode, registry_);
  d.resolutions = std::move(pass.resolutions);
  std::vector<Violation> remaining = d.unresolved();

  // Only the owner can vouch for the external end of a market app's
  // recording; other unresolved flows make a prompt pointless.
  const bool owner_can_resolve =
      uses_trusted_path(config_.mode) && d.request.device == DeviceKind::Microphone &&
      classify_pid(d.request.pid) == PartyClass::MarketApp && !remaining.empty() &&
      std::all_of(remaining.begin(), remaining.end(), [](const Violation& v) {
        return v.channel.kind == ChannelKind::ExternalToMic;
      });
  if (owner_can_resolve) {
    const ApprovalResult approval =
        trusted_path_.request_owner_approval(d.request.pid, d.channels, d.request.time);
    if (approval.answer == Approval::Deny) {
      d.outcome = Outcome::Denied;
      d.reason = DenialReason::ApprovalDenied;
      return;
    }
    const ResolutionKind kind = approval.source == ApprovalSource::Cache
                                    ? ResolutionKind::CacheHit
                                    : ResolutionKind::OwnerApproved;
    for (const auto& v : remaining) {
      d.resolutions.push_back({kind, std::nullopt, v.channel, std::nullopt});
    }
    remaining.clear();
  }

  if (remaining.empty()) {
    d.outcome = Outcome::Granted;
    d.reason = DenialReason::None;
  } else {
    d.outcome = Outcome::Denied;
    d.reason = pass.rejected ? DenialReason::ResolverRejected : DenialReason::FlowViolation;
  }
}

void ReferenceMonitor::check_time(Ticks now) const {
  if (now < state_.clock()) {
    throw ClockError("time went backwards: " + std::to_string(now) + " < " +
                     std::to_string(state_.clock()));
  }
}

void ReferenceMonitor::stop_input(Pid pid, Ticks now) {
  const auto& mic = state_.mic_session();
  if (!mic || mic->pid != pid) {
    throw UnknownSessionError("pid " + std::to_string(pid) + " holds no microphone session");
  }
  check_time(now);
  close(mic->id, Hook::StopInput, now, false);
}

void ReferenceMonitor::stop_output(SessionId session, Ticks now) {
  const AudioSession* s = state_.find_session(session);
  if (s == nullptr || s->device != DeviceKind::Speaker) {
    throw UnknownSessionError("no active speaker session " + std::to_string(session.value));
  }
  check_time(now);
  close(session, Hook::StopOutput, now, false);
}

SessionId ReferenceMonitor::output_session_of(Pid pid) const {
  const auto& sessions = state_.speaker_sessions();
  const auto it = std::find_if(sessions.rbegin(), sessions.rend(),
                               [pid](const AudioSession& s) { return s.pid == pid; });
  if (it == sessions.rend()) {
    throw UnknownSessionError("pid " + std::to_string(pid) + " holds no speaker session");
  }
  return it->id;
}

void ReferenceMonitor::close(SessionId id, Hook hook, Ticks now, bool revoked) {
  state_.advance_clock(now);
  const AudioSession s = state_.close_session(id);
  grants_.erase(id);
  audit_.push_back(AuditRecord{now, hook, s.pid, std::nullopt, id, revoked});
}

std::vector<RevocationRecord> ReferenceMonitor::set_owner_authenticated(bool authenticated,
                                                                        Ticks now) {
  state_.advance_clock(now);
  if (state_.owner_authenticated() == authenticated) return {};
  state_.set_owner_authenticated(authenticated);
  trusted_path_.invalidate_cache();

  std::vector<RevocationRecord> revoked;
  if (!enforces_lattice(config_.mode) || !config_.revoke_on_auth_change) return revoked;

  for (const auto& s : state_.active_sessions()) {
    auto violations = recheck(s);
    if (!violations.empty()) revoked.push_back({s, std::move(violations)});
  }
  for (const auto& r : revoked) {
    close(r.session.id, stop_hook(r.session.device), now, true);
  }
  return revoked;
}

std::vector<Violation> ReferenceMonitor::recheck(const AudioSession& session) const {
  const auto channels =
      derive_channels({session.pid, session.device, session.content}, state_);
  const auto violations = unsafe_flows(channels);
  const ResolverPass pass = apply_resolvers(violations, config_.mode, registry_);

  bool owner_approved = false;
  if (const auto it = grants_.find(session.id);
      it != grants_.end() && state_.owner_authenticated()) {
    owner_approved = std::any_of(
        it->second.resolutions.begin(), it->second.resolutions.end(),
        [](const ResolutionRecord& r) {
          return r.kind != ResolutionKind::ResolverApplied &&
                 r.channel.kind == ChannelKind::ExternalToMic;
        });
  }

  std::vector<Violation> unresolved;
  for (const auto& v : violations) {
    if (covered(pass.resolutions, v.channel)) continue;
    if (owner_approved && v.channel.kind == ChannelKind::ExternalToMic) continue;
    unresolved.push_back(v);
  }
  return unresolved;
}

void ReferenceMonitor::set_screen_on(bool on, Ticks now) {
  state_.advance_clock(now);
  state_.set_screen_on(on);
}

std::string to_string(MonitorMode mode) {
  switch (mode) {
    case MonitorMode::BaseAndroid:
      return "base";
    case MonitorMode::SimpleIsolation:
      return "isolation";
    case MonitorMode::MlsOnly:
      return "mls";
    case MonitorMode::MlsUserApproval:
      return "approval";
    case MonitorMode::MlsResolver1:
      return "resolver1";
    case MonitorMode::MlsResolver2:
      return "resolver2";
    case MonitorMode::Full:
      return "full";
  }
  return "?";
}

std::optional<MonitorMode> parse_mode(const std::string& text) {
  for (auto m : {MonitorMode::BaseAndroid, MonitorMode::SimpleIsolation, MonitorMode::MlsOnly,
                 MonitorMode::MlsUserApproval, MonitorMode::MlsResolver1,
                 MonitorMode::MlsResolver2, MonitorMode::Full}) {
    if (to_string(m) == text) return m;
  }
  return std::nullopt;
}

std::string mode_title(MonitorMode mode) {
  switch (mode) {
    case MonitorMode::BaseAndroid:
      return "Base Android";
    case MonitorMode::SimpleIsolation:
      return "Simple Isolation";
    case MonitorMode::MlsOnly:
      return "MLS";
    case MonitorMode::MlsUserApproval:
      return "MLS + User Approval";
    case MonitorMode::MlsResolver1:
      return "MLS + Resolver 1";
    case MonitorMode::MlsResolver2:
      return "MLS + Resolver 2";
    case MonitorMode::Full:
      return "Full monitor";
  }
  return "?";
}

std::string to_string(Hook hook) {
  switch (hook) {
    case Hook::StartInput:
      return "start_input";
    case Hook::StopInput:
      return "stop_input";
    case Hook::StartOutput:
      return "start_output";
    case Hook::StopOutput:
      return "stop_output";
  }
  return "?";
}

std::string to_string(Outcome outcome) {
  return outcome == Outcome::Granted ? "granted" : "denied";
}

std::string to_string(DenialReason reason) {
  switch (reason) {
    case DenialReason::None:
      return "none";
    case DenialReason::PermissionDenied:
      return "permission_denied";
    case DenialReason::DeviceBusy:
      return "device_busy";
    case DenialReason::IsolationConflict:
      return "isolation_conflict";
    case DenialReason::FlowViolation:
      return "flow_violation";
    case DenialReason::ResolverRejected:
      return "resolver_rejected";
    case DenialReason::ApprovalDenied:
      return "approval_denied";
  }
  return "?";
}

}  // namespace audiomon
