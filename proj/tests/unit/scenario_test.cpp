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

#include <string>

#include "audiomon/error.hpp"
#include "audiomon/scenario.hpp"

namespace audiomon {
namespace {

using nlohmann::json;

json minimal() {
  return json::parse(R"({
    "name": "mini", "kind": "attack",
    "processes": [{"pid": 3000, "name": "rec", "record_audio": true},
                  {"pid": 1011, "name": "phone", "callbacks": ["resolver1"]}],
    "oracle": {"default": "approve", "by_pid": {"3000": "deny"}},
    "events": [
      {"t": 0, "op": "set_auth", "value": true},
      {"t": 1, "op": "start_input", "pid": 3000},
      {"t": 1, "op": "assert", "expect": "attack_realized", "pid": 3000, "device": "microphone"},
      {"t": 2, "op": "stop_input", "pid": 3000}
    ]})");
}

std::string error_of(const json& doc) {
  try {
    parse_scenario(doc, "doc.json");
  } catch (const MalformedScenarioError& e) {
    return e.what();
  }
  return "";
}

TEST(ParseScenario, MinimalDocument) {
  const Scenario s = parse_scenario(minimal());
  EXPECT_EQ(s.name, "mini");
  EXPECT_EQ(s.kind, ScenarioKind::Attack);
  ASSERT_EQ(s.processes.size(), 2u);
  ASSERT_TRUE(s.processes[1].resolver_callback.has_value());
  EXPECT_TRUE(s.processes[1].resolver_callback->accepts_resolver(ResolverId::ApprovedSystemAudio));
  EXPECT_EQ(s.oracle.fallback, Approval::Approve);
  EXPECT_EQ(s.oracle.by_pid.at(3000), Approval::Deny);
  ASSERT_EQ(s.events.size(), 4u);
  EXPECT_EQ(event_name(s.events[1].action), "start_input");
  const auto& check = std::get<event::AttackRealized>(s.events[2].action);
  EXPECT_EQ(check.device, DeviceKind::Microphone);
}

TEST(ParseScenario, TimeMustNotGoBack) {
  json doc = minimal();
  doc["events"][3]["t"] = 0;
  EXPECT_NE(error_of(doc).find("events[3]"), std::string::npos) << error_of(doc);
}

TEST(ParseScenario, PidsMustBeDeclared) {
  json doc = minimal();
  doc["events"][1]["pid"] = 4242;
  EXPECT_NE(error_of(doc).find("4242"), std::string::npos);
}

TEST(ParseScenario, SpawnDeclaresLaterPids) {
  json doc = minimal();
  doc["events"].insert(doc["events"].begin(),
                       json{{"t", 0}, {"op", "spawn"}, {"process", {{"pid", 3100}}}});
  doc["events"].push_back(json{{"t", 3}, {"op", "start_output"}, {"pid", 3100}});
  EXPECT_NO_THROW(parse_scenario(doc));
}

TEST(ParseScenario, MarketAppsCannotReceiveCallbacks) {
  json doc = minimal();
  doc["processes"][0]["callbacks"] = {"resolver2"};
  EXPECT_NE(error_of(doc).find("market app"), std::string::npos);
}

TEST(ParseScenario, FieldChecks) {
  json bad_type = minimal();
  bad_type["channel_type"] = 4;
  EXPECT_NE(error_of(bad_type).find("channel_type"), std::string::npos);

  json bad_ttl = minimal();
  bad_ttl["ttl"] = 0;
  EXPECT_NE(error_of(bad_ttl).find("ttl"), std::string::npos);

  json bad_op = minimal();
  bad_op["events"][0]["op"] = "reboot";
  EXPECT_NE(error_of(bad_op).find("reboot"), std::string::npos);

  json bad_content = minimal();
  bad_content["events"][1]["content"] = "loud";
  EXPECT_NE(error_of(bad_content).find("content"), std::string::npos);

  json bad_subject = minimal();
  bad_subject["subject"] = 5;
  EXPECT_NE(error_of(bad_subject).find("subject"), std::string::npos);

  EXPECT_NE(error_of(json::array()).find("object"), std::string::npos);
  EXPECT_NE(error_of(json{{"name", "x"}}).find("doc.json"), std::string::npos);
}

TEST(LoadScenario, MissingFileAndBadJson) {
  EXPECT_THROW(load_scenario("/nonexistent/x.json"), MalformedScenarioError);
  EXPECT_THROW(load_corpus("/nonexistent"), MalformedScenarioError);
}

TEST(LoadCorpus, ShippedScenarios) {
  const auto attacks = load_corpus(std::string(AUDIOMON_TEST_SCENARIO_DIR) + "/attacks");
  const auto apps = load_corpus(std::string(AUDIOMON_TEST_SCENARIO_DIR) + "/apps");
  ASSERT_EQ(attacks.size(), 6u);
  ASSERT_EQ(apps.size(), 17u);
  for (std::size_t i = 0; i < attacks.size(); ++i) {
    EXPECT_EQ(attacks[i].kind, ScenarioKind::Attack);
    EXPECT_EQ(attacks[i].attack_scenario, static_cast<int>(i) + 1);
  }
  EXPECT_EQ(attacks.front().name, "touchless_control");
  for (const auto& a : apps) {
    EXPECT_EQ(a.kind, ScenarioKind::App);
    EXPECT_TRUE(a.subject.has_value()) << a.name;
  }
}

}  // namespace
}  // namespace audiomon
