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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "audiomon/channel.hpp"
#include "audiomon/device_state.hpp"
#include "audiomon/process.hpp"
#include "audiomon/resolvers.hpp"
#include "audiomon/trusted_path.hpp"

namespace audiomon {

// Which stages of the authorization pipeline are active.
enum class MonitorMode : std::uint8_t {
  BaseAndroid,      // permission check only
  SimpleIsolation,  // no concurrent mic + speaker by two different processes
  MlsOnly,
  MlsUserApproval,
  MlsResolver1,
  MlsResolver2,
  Full,  // both resolvers and the trusted path
};

bool enforces_lattice(MonitorMode mode);
bool uses_trusted_path(MonitorMode mode);
bool resolver_enabled(MonitorMode mode, ResolverId id);

struct MonitorConfig {
  MonitorMode mode = MonitorMode::Full;
  Ticks ttl = 600;
  bool revoke_on_auth_change = true;
};

enum class Hook : std::uint8_t { StartInput, StopInput, StartOutput, StopOutput };

enum class Outcome : std::uint8_t { Granted, Denied };

enum class DenialReason : std::uint8_t {
  None,
  PermissionDenied,
  DeviceBusy,
  IsolationConflict,
  FlowViolation,
  ResolverRejected,
  ApprovalDenied,
};

struct Violation {
  AudioChannel channel;
  FlowVerdict verdict = FlowVerdict::Safe;
};

struct AccessRequest {
  Pid pid = 0;
  DeviceKind device = DeviceKind::Speaker;
  ContentTag content = ContentTag::Arbitrary;
  Ticks time = 0;
};

struct Decision {
  Outcome outcome = Outcome::Denied;
  DenialReason reason = DenialReason::None;
  AccessRequest request;
  // Every channel the request would create, safe or not. Empty when the
  // request was refused before channel derivation.
  std::vector<AudioChannel> channels;
  std::vector<Violation> violations;
  std::vector<ResolutionRecord> resolutions;
  std::optional<SessionId> session;  // set iff granted

  bool granted() const { return outcome == Outcome::Granted; }
  bool is_resolved(const AudioChannel& channel) const;
  std::vector<Violation> unresolved() const;
};

struct AuditRecord {
  Ticks time = 0;
  Hook hook = Hook::StartInput;
  Pid pid = 0;
  std::optional<Decision> decision;  // start hooks only
  std::optional<SessionId> session;  // opened or closed session
  bool revoked = false;              // stop issued by the monitor itself
};

struct RevocationRecord {
  AudioSession session;
  std::vector<Violation> violations;
};

// Mediates the four audio hooks. Requests are processed strictly one at a
// time; the object may move between threads but must not be shared for
// concurrent mutation.
class ReferenceMonitor {
 public:
  explicit ReferenceMonitor(MonitorConfig config = {}, ApprovalOracle oracle = {});

  void register_process(ProcessRecord record);
  const ProcessRegistry& registry() const { return registry_; }

  // Throw UnknownPidError for unregistered pids and ClockError when time
  // goes backwards. Denials are values, not exceptions.
  Decision start_input(Pid pid, ContentTag content, Ticks now);
  Decision start_output(Pid pid, ContentTag content, Ticks now);

  // Throw UnknownSessionError without touching any state.
  void stop_input(Pid pid, Ticks now);
  void stop_output(SessionId session, Ticks now);
  // Most recently opened speaker session of `pid`.
  SessionId output_session_of(Pid pid) const;

  // Flips owner authentication; the event cache is dropped on any change.
  // In lattice modes with revocation enabled, active sessions are
  // re-checked (resolvers only, no prompts; owner approvals survive only
  // while the owner stays authenticated) and unsafe ones are closed.
  std::vector<RevocationRecord> set_owner_authenticated(bool authenticated, Ticks now);
  void set_screen_on(bool on, Ticks now);

  std::span<const AuditRecord> audit_log() const { return audit_; }
  NotificationState notifications() const { return update_notifications(state_); }
  const DeviceState& device_state() const { return state_; }
  const TrustedPath& trusted_path() const { return trusted_path_; }
  int prompt_count() const { return trusted_path_.oracle().prompt_count(); }
  const MonitorConfig& config() const { return config_; }

  void set_mutation_observer(DeviceState::Observer observer) {
    state_.set_observer(std::move(observer));
  }

 private:
  Decision start(Hook hook, Pid pid, DeviceKind device, ContentTag content, Ticks now);
  Decision authorize(const AccessRequest& request);
  void enforce_lattice(Decision& d);
  std::vector<Violation> recheck(const AudioSession& session) const;
  void check_time(Ticks now) const;
  void close(SessionId id, Hook hook, Ticks now, bool revoked);

  MonitorConfig config_;
  ProcessRegistry registry_;
  DeviceState state_;
  TrustedPath trusted_path_;
  std::vector<AuditRecord> audit_;
  std::map<SessionId, Decision> grants_;
};

std::string to_string(MonitorMode mode);    // "base", "isolation", ...
std::optional<MonitorMode> parse_mode(const std::string& text);
std::string mode_title(MonitorMode mode);   // "Base Android", ...
std::string to_string(Hook hook);
std::string to_string(Outcome outcome);
std::string to_string(DenialReason reason);

}  // namespace audiomon
