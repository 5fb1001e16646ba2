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

#include "audiomon/random_stream.hpp"

#include <algorithm>
#include <set>

#include "audiomon/error.hpp"

namespace audiomon {

namespace {

ApprovalOracle random_owner(std::uint64_t seed) {
  return ApprovalOracle(
      [rng = std::mt19937_64(seed * 0x9E3779B97F4A7C15ULL + 7)](
          Pid, std::span<const AudioChannel>) mutable {
        return rng() % 2 == 0 ? Approval::Approve : Approval::Deny;
      });
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, MonitorMode mode, RandomStreamConfig config)
    : rng_(seed),
      config_(config),
      monitor_(MonitorConfig{mode, 100, true}, random_owner(seed)) {
  std::set<Pid> used;
  const auto add = [&](Pid lo, Pid hi, int count) {
    std::uniform_int_distribution<Pid> dist(lo, hi);
    for (int i = 0; i < count; ++i) {
      Pid pid = dist(rng_);
      while (!used.insert(pid).second) pid = dist(rng_);
      const bool permission = rng_() % 5 != 0;
      std::optional<ResolverCallback> callback;
      if (pid <= 2000 && rng_() % 3 != 0) {
        callback = ResolverCallback{};
        if (rng_() % 2) callback->accepts.push_back(ResolverId::ApprovedSystemAudio);
        if (rng_() % 2) callback->accepts.push_back(ResolverId::ApprovedMarketAudio);
      }
      monitor_.register_process(
          make_process(pid, "p" + std::to_string(pid), permission, std::move(callback)));
      pids_.push_back(pid);
    }
  };
  add(1, 1000, config_.system_services);
  add(1001, 2000, config_.system_apps);
  add(2001, 2100, config_.market_apps);
}

Pid RandomStream::random_pid() {
  return pids_[std::uniform_int_distribution<std::size_t>(0, pids_.size() - 1)(rng_)];
}

ContentTag RandomStream::random_content() {
  return rng_() % 2 ? ContentTag::ApprovedAudio : ContentTag::Arbitrary;
}

StepResult RandomStream::step() {
  now_ += std::uniform_int_distribution<Ticks>(0, config_.max_step)(rng_);
  StepResult r;
  r.time = now_;
  const DeviceState& state = monitor_.device_state();
  const auto roll = std::uniform_int_distribution<int>(0, 99)(rng_);
  if (roll < 25) {
    r.op = "start_input";
    r.decision = monitor_.start_input(random_pid(), random_content(), now_);
  } else if (roll < 50) {
    r.op = "start_output";
    r.decision = monitor_.start_output(random_pid(), random_content(), now_);
  } else if (roll < 62) {
    r.op = "stop_input";
    const Pid pid = state.mic_session() ? state.mic_session()->pid : random_pid();
    try {
      monitor_.stop_input(pid, now_);
    } catch (const UnknownSessionError&) {
      r.rejected = true;
    }
  } else if (roll < 74) {
    r.op = "stop_output";
    const auto& speakers = state.speaker_sessions();
    SessionId id{0};
    if (!speakers.empty()) {
      id = speakers[std::uniform_int_distribution<std::size_t>(0, speakers.size() - 1)(rng_)].id;
    }
    try {
      monitor_.stop_output(id, now_);
    } catch (const UnknownSessionError&) {
      r.rejected = true;
    }
  } else if (roll < 77) {
    r.op = "stop_input";
    try {
      monitor_.stop_input(random_pid(), now_);
    } catch (const UnknownSessionError&) {
      r.rejected = true;
    }
  } else if (roll < 90) {
    r.op = "set_auth";
    r.revocations = monitor_.set_owner_authenticated(rng_() % 2 == 0, now_);
  } else {
    r.op = "set_screen";
    monitor_.set_screen_on(rng_() % 2 == 0, now_);
  }
  return r;
}

FuzzReport run_random_streams(const FuzzConfig& config) {
  FuzzReport report;
  if (config.modes.empty()) return report;
  const auto fail = [&report](std::string what) {
    if (report.failures.size() < 10) report.failures.push_back(std::move(what));
  };

  for (std::size_t i = 0; i < config.streams; ++i) {
    const MonitorMode mode = config.modes[i % config.modes.size()];
    RandomStream stream(config.seed + i, mode);
    ReferenceMonitor& monitor = stream.monitor();

    std::vector<DeviceMutation> mutations;
    monitor.set_mutation_observer(
        [&mutations](const DeviceMutation& m) { mutations.push_back(m); });

    std::optional<SessionId> shadow_mic;
    std::set<SessionId> shadow_speakers;
    std::size_t seen = 0;
    const std::string tag = "stream " + std::to_string(i) + " (" + to_string(mode) + ")";

    for (std::size_t e = 0; e < config.events_per_stream; ++e) {
      const std::size_t opposite_mic = shadow_speakers.size();
      const std::size_t opposite_speaker = shadow_mic ? 1 : 0;
      StepResult step = stream.step();

      for (; seen < mutations.size(); ++seen) {
        const DeviceMutation& m = mutations[seen];
        const bool mic = m.session.device == DeviceKind::Microphone;
        if (m.kind == DeviceMutation::Kind::Open) {
          if (mic && shadow_mic) {
            ++report.exclusivity_violations;
            fail(tag + ": two microphone sessions");
          }
          if (mic) {
            shadow_mic = m.session.id;
          } else {
            shadow_speakers.insert(m.session.id);
          }
        } else if (mic) {
          shadow_mic.reset();
        } else {
          shadow_speakers.erase(m.session.id);
        }
      }
      report.revocations += step.revocations.size();

      if (step.decision) {
        const Decision& d = *step.decision;
        ++report.requests;
        if (d.granted()) ++report.grants;
        if (d.granted() && enforces_lattice(mode)) {
          const std::size_t expected =
              1 + (d.request.device == DeviceKind::Microphone ? opposite_mic : opposite_speaker);
          if (d.channels.size() != expected) {
            ++report.soundness_violations;
            fail(tag + ": granted with " + std::to_string(d.channels.size()) +
                 " channels, expected " + std::to_string(expected));
          }
          for (const auto& c : d.channels) {
            if (flow_safe(c.source.label, c.sink.label) != FlowVerdict::Safe &&
                !d.is_resolved(c)) {
              ++report.soundness_violations;
              fail(tag + ": unresolved " + to_string(c) + " in a grant");
            }
          }
        }
      }

      const NotificationState expected =
          notification_for(shadow_mic.has_value(), monitor.device_state().screen_on());
      if (monitor.notifications() != expected) {
        ++report.notification_mismatches;
        fail(tag + ": notification state diverged");
      }
    }

    // Replaying the audit log must reproduce the mutation sequence exactly.
    std::vector<std::pair<DeviceMutation::Kind, SessionId>> from_audit;
    for (const auto& r : monitor.audit_log()) {
      const bool start = r.hook == Hook::StartInput || r.hook == Hook::StartOutput;
      if (start && r.decision && r.decision->granted()) {
        from_audit.emplace_back(DeviceMutation::Kind::Open, *r.session);
      } else if (!start) {
        from_audit.emplace_back(DeviceMutation::Kind::Close, *r.session);
      }
    }
    bool match = from_audit.size() == mutations.size();
    for (std::size_t k = 0; match && k < mutations.size(); ++k) {
      match = from_audit[k].first == mutations[k].kind &&
              from_audit[k].second == mutations[k].session.id;
    }
    if (!match) {
      ++report.mediation_mismatches;
      fail(tag + ": audit log and device mutations disagree");
    }
    ++report.streams;
  }
  return report;
}

}  // namespace audiomon
