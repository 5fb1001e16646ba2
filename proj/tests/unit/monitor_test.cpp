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


#include <gtest/gtest.h>

#include "audiomon/error.hpp"
#include "audiomon/monitor.hpp"

namespace audiomon {
namespace {

ReferenceMonitor make_monitor(MonitorMode mode, Approval owner = Approval::Deny,
                              bool revoke = true) {
  ReferenceMonitor m(MonitorConfig{mode, 600, revoke}, ApprovalOracle::always(owner));
  m.register_process(make_process(800, "voice search service", true));
  m.register_process(make_process(1011, "phone", true,
                                  ResolverCallback{{ResolverId::ApprovedSystemAudio}}));
  m.register_process(make_process(1012, "music", false));
  m.register_process(make_process(3000, "recorder", true));
  m.register_process(make_process(3004, "player", false));
  return m;
}

TEST(Monitor, MarketSpeakerBesideServiceMicIsDenied) {
  auto m = make_monitor(MonitorMode::Full);
  m.set_owner_authenticated(true, 0);
  ASSERT_TRUE(m.start_input(800, ContentTag::Arbitrary, 1).granted());
  const Decision d = m.start_output(3000, ContentTag::Arbitrary, 2);
  EXPECT_FALSE(d.granted());
  EXPECT_EQ(d.reason, DenialReason::FlowViolation);
  ASSERT_EQ(d.violations.size(), 2u);
  for (const auto& v : d.violations) EXPECT_EQ(v.verdict, FlowVerdict::IntegrityViolation);
  EXPECT_EQ(m.prompt_count(), 0);
}

TEST(Monitor, BaseAndroidGrantsTheSameRequest) {
  auto m = make_monitor(MonitorMode::BaseAndroid);
  m.set_owner_authenticated(true, 0);
  ASSERT_TRUE(m.start_input(800, ContentTag::Arbitrary, 1).granted());
  EXPECT_TRUE(m.start_output(3000, ContentTag::Arbitrary, 2).granted());
}

TEST(Monitor, IsolationBlocksCrossProcessConcurrency) {
  auto m = make_monitor(MonitorMode::SimpleIsolation);
  ASSERT_TRUE(m.start_input(800, ContentTag::Arbitrary, 1).granted());
  EXPECT_EQ(m.start_output(3000, ContentTag::Arbitrary, 2).reason,
            DenialReason::IsolationConflict);
  EXPECT_TRUE(m.start_output(800, ContentTag::Arbitrary, 3).granted());
}

TEST(Monitor, ApprovedMarketAudioPassesThroughResolver2) {
  auto m = make_monitor(MonitorMode::Full);
  const Decision d = m.start_output(3004, ContentTag::ApprovedAudio, 0);
  EXPECT_TRUE(d.granted());
  ASSERT_EQ(d.resolutions.size(), 1u);
  EXPECT_EQ(d.resolutions[0].resolver, ResolverId::ApprovedMarketAudio);
  EXPECT_TRUE(d.unresolved().empty());

  auto r1_only = make_monitor(MonitorMode::MlsResolver1);
  EXPECT_FALSE(r1_only.start_output(3004, ContentTag::ApprovedAudio, 0).granted());
}

TEST(Monitor, RingtoneNeedsConsentOfTheSystemApp) {
  auto m = make_monitor(MonitorMode::Full);
  EXPECT_TRUE(m.start_output(1011, ContentTag::ApprovedAudio, 0).granted());
  const Decision d = m.start_output(1012, ContentTag::ApprovedAudio, 1);
  EXPECT_FALSE(d.granted());
  EXPECT_EQ(d.reason, DenialReason::ResolverRejected);
}

TEST(Monitor, MarketRecordingAsksTheOwner) {
  auto yes = make_monitor(MonitorMode::Full, Approval::Approve);
  const Decision d = yes.start_input(3000, ContentTag::Arbitrary, 0);
  EXPECT_TRUE(d.granted());
  ASSERT_EQ(d.resolutions.size(), 1u);
  EXPECT_EQ(d.resolutions[0].kind, ResolutionKind::OwnerApproved);
  EXPECT_EQ(yes.prompt_count(), 1);

  auto no = make_monitor(MonitorMode::Full, Approval::Deny);
  EXPECT_EQ(no.start_input(3000, ContentTag::Arbitrary, 0).reason,
            DenialReason::ApprovalDenied);

  auto mls = make_monitor(MonitorMode::MlsOnly, Approval::Approve);
  EXPECT_EQ(mls.start_input(3000, ContentTag::Arbitrary, 0).reason,
            DenialReason::FlowViolation);
  EXPECT_EQ(mls.prompt_count(), 0);
}

TEST(Monitor, NoPromptWhenASpeakerFlowIsAlsoUnsafe) {
  auto m = make_monitor(MonitorMode::Full, Approval::Approve);
  m.set_owner_authenticated(true, 0);
  ASSERT_TRUE(m.start_output(1012, ContentTag::Arbitrary, 1).granted());
  const Decision d = m.start_input(3000, ContentTag::Arbitrary, 2);
  EXPECT_FALSE(d.granted());
  EXPECT_EQ(m.prompt_count(), 0);
}

TEST(Monitor, PermissionAndBusyChecksComeFirst) {
  auto m = make_monitor(MonitorMode::BaseAndroid);
  EXPECT_EQ(m.start_input(1012, ContentTag::Arbitrary, 0).reason,
            DenialReason::PermissionDenied);
  ASSERT_TRUE(m.start_input(800, ContentTag::Arbitrary, 1).granted());
  EXPECT_EQ(m.start_input(3000, ContentTag::Arbitrary, 2).reason, DenialReason::DeviceBusy);
  EXPECT_TRUE(m.start_output(1012, ContentTag::Arbitrary, 3).granted());
}

TEST(Monitor, LockingRevokesUnsafeSessions) {
  auto m = make_monitor(MonitorMode::Full);
  m.set_owner_authenticated(true, 0);
  ASSERT_TRUE(m.start_output(1012, ContentTag::Arbitrary, 1).granted());
  const auto revoked = m.set_owner_authenticated(false, 2);
  ASSERT_EQ(revoked.size(), 1u);
  EXPECT_EQ(revoked[0].session.pid, 1012);
  EXPECT_EQ(revoked[0].violations[0].verdict, FlowVerdict::SecrecyViolation);
  EXPECT_TRUE(m.device_state().speaker_sessions().empty());
  const AuditRecord& last = m.audit_log().back();
  EXPECT_EQ(last.hook, Hook::StopOutput);
  EXPECT_TRUE(last.revoked);
  EXPECT_EQ(last.pid, 1012);
}

TEST(Monitor, NoRevocationWhenDisabledOrOutsideLattice) {
  auto off = make_monitor(MonitorMode::Full, Approval::Deny, false);
  off.set_owner_authenticated(true, 0);
  off.start_output(1012, ContentTag::Arbitrary, 1);
  EXPECT_TRUE(off.set_owner_authenticated(false, 2).empty());

  auto base = make_monitor(MonitorMode::BaseAndroid);
  base.start_output(3000, ContentTag::Arbitrary, 1);
  EXPECT_TRUE(base.set_owner_authenticated(true, 2).empty());
  EXPECT_EQ(base.device_state().speaker_sessions().size(), 1u);
}

TEST(Monitor, OwnerApprovalLastsOnlyWhileOwnerIsPresent) {
  auto m = make_monitor(MonitorMode::Full, Approval::Approve);
  ASSERT_TRUE(m.start_input(3000, ContentTag::Arbitrary, 0).granted());
  EXPECT_TRUE(m.set_owner_authenticated(true, 1).empty());
  EXPECT_TRUE(m.device_state().mic_in_use());
  const auto revoked = m.set_owner_authenticated(false, 2);
  ASSERT_EQ(revoked.size(), 1u);
  EXPECT_EQ(revoked[0].session.device, DeviceKind::Microphone);
  EXPECT_EQ(m.prompt_count(), 1);
}

TEST(Monitor, AuthFlipInvalidatesCache) {
  auto m = make_monitor(MonitorMode::Full, Approval::Approve);
  m.start_input(3000, ContentTag::Arbitrary, 0);
  m.stop_input(3000, 1);
  m.start_input(3000, ContentTag::Arbitrary, 2);
  m.stop_input(3000, 3);
  EXPECT_EQ(m.prompt_count(), 1);
  m.set_owner_authenticated(true, 4);
  m.set_owner_authenticated(false, 5);
  m.start_input(3000, ContentTag::Arbitrary, 6);
  EXPECT_EQ(m.prompt_count(), 2);
}

TEST(Monitor, StopErrors) {
  auto m = make_monitor(MonitorMode::BaseAndroid);
  EXPECT_THROW(m.stop_input(800, 0), UnknownSessionError);
  const Decision d = m.start_output(3000, ContentTag::Arbitrary, 1);
  m.stop_output(*d.session, 2);
  EXPECT_THROW(m.stop_output(*d.session, 3), UnknownSessionError);
  EXPECT_THROW(m.output_session_of(3000), UnknownSessionError);
  EXPECT_THROW(m.start_output(4242, ContentTag::Arbitrary, 4), UnknownPidError);
  EXPECT_THROW(m.start_output(3000, ContentTag::Arbitrary, 1), ClockError);
}

TEST(Monitor, AuditHasOneRecordPerHookCall) {
  auto m = make_monitor(MonitorMode::Full, Approval::Approve);
  const auto sid = m.start_output(3004, ContentTag::ApprovedAudio, 0).session;
  ASSERT_TRUE(sid.has_value());
  m.start_output(3004, ContentTag::Arbitrary, 1);
  m.stop_output(*sid, 2);
  m.start_input(3000, ContentTag::Arbitrary, 3);
  m.stop_input(3000, 4);
  const auto log = m.audit_log();
  ASSERT_EQ(log.size(), 5u);
  EXPECT_TRUE(log[0].decision && log[0].decision->granted());
  EXPECT_TRUE(log[1].decision && !log[1].decision->granted());
  EXPECT_FALSE(log[1].session.has_value());
  EXPECT_FALSE(log[2].decision.has_value());
  EXPECT_EQ(log[2].session, sid);
  EXPECT_TRUE(log[3].decision && log[3].decision->granted());
  EXPECT_EQ(log[4].hook, Hook::StopInput);
  EXPECT_FALSE(log[4].revoked);
}

TEST(Monitor, ModeNames) {
  for (auto mode : {MonitorMode::BaseAndroid, MonitorMode::SimpleIsolation, MonitorMode::MlsOnly,
                    MonitorMode::MlsUserApproval, MonitorMode::MlsResolver1,
                    MonitorMode::MlsResolver2, MonitorMode::Full}) {
    EXPECT_EQ(parse_mode(to_string(mode)), mode);
    EXPECT_FALSE(mode_title(mode).empty());
  }
  EXPECT_FALSE(parse_mode("turbo").has_value());
}

}  // namespace
}  // namespace audiomon
