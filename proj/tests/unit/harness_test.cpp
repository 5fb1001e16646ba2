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

#include <fstream>
#include <map>

#include "audiomon/error.hpp"
#include "audiomon/harness.hpp"

namespace audiomon {
namespace {

const std::string kDir = AUDIOMON_TEST_SCENARIO_DIR;

Scenario load(const std::string& rel) { return load_scenario(kDir + "/" + rel); }

Json golden(const std::string& name) {
  std::ifstream in(kDir + "/golden/" + name);
  return Json::parse(in);
}

TEST(RunScenario, KeyloggerDependsOnMode) {
  const Scenario s = load("attacks/keylogger.json");
  EXPECT_EQ(run_scenario(s, MonitorMode::BaseAndroid).attack_result, AttackResult::Succeeded);
  EXPECT_EQ(run_scenario(s, MonitorMode::SimpleIsolation).attack_result,
            AttackResult::Prevented);
  const auto full = run_scenario(s, MonitorMode::Full);
  EXPECT_EQ(full.attack_result, AttackResult::Prevented);
  EXPECT_TRUE(full.channel_kinds.contains(ChannelKind::SpeakerToMic));
}

TEST(RunScenario, AppVerdicts) {
  const std::map<std::string, std::map<MonitorMode, AppResult>> expected = {
      {"apps/pandora.json",
       {{MonitorMode::MlsOnly, AppResult::IV}, {MonitorMode::MlsResolver2, AppResult::Runs}}},
      {"apps/phone.json",
       {{MonitorMode::MlsOnly, AppResult::SV}, {MonitorMode::MlsResolver1, AppResult::Runs}}},
      {"apps/skype.json",
       {{MonitorMode::MlsOnly, AppResult::SIV}, {MonitorMode::Full, AppResult::Runs}}},
  };
  for (const auto& [file, cells] : expected) {
    const Scenario s = load(file);
    for (const auto& [mode, result] : cells) {
      EXPECT_EQ(run_scenario(s, mode).app_result, result) << file << " " << to_string(mode);
    }
  }
}

TEST(RunScenario, RecordersPromptOnlyUnderApprovalModes) {
  const Scenario s = load("apps/voice_recorder.json");
  EXPECT_GT(run_scenario(s, MonitorMode::Full).prompts, 0);
  EXPECT_EQ(run_scenario(s, MonitorMode::MlsOnly).prompts, 0);
  EXPECT_TRUE(run_scenario(s, MonitorMode::Full).user_notified);
}

TEST(RunScenario, Deterministic) {
  const Scenario s = load("attacks/speak_out.json");
  EXPECT_EQ(to_json(run_scenario(s, MonitorMode::Full)).dump(),
            to_json(run_scenario(s, MonitorMode::Full)).dump());
}

TEST(RunScenario, StopAfterDeniedStartIsSkipped) {
  const Scenario s = load("apps/phone.json");
  const auto out = run_scenario(s, MonitorMode::MlsOnly);
  bool skipped = false;
  for (const auto& t : out.trace) {
    if (t.note.find("holds no") != std::string::npos) skipped = true;
  }
  EXPECT_TRUE(skipped);
}

TEST(RunScenario, StopWithoutStartIsAnError) {
  Scenario s = parse_scenario(Json::parse(R"({
    "name": "bad", "kind": "app", "processes": [{"pid": 3000}],
    "events": [{"t": 0, "op": "stop_output", "pid": 3000}]})"));
  EXPECT_THROW(run_scenario(s, MonitorMode::Full), MalformedScenarioError);
}

TEST(RunMatrix, ReproducesShippedGoldens) {
  const auto attacks = load_corpus(kDir + "/attacks");
  const auto apps = load_corpus(kDir + "/apps");
  const auto t2 = run_matrix(attacks, attack_table_modes());
  const auto t3 = run_matrix(apps, app_table_modes());
  EXPECT_TRUE(diff_against_golden(t2, golden("table2.json")).empty());
  EXPECT_TRUE(diff_against_golden(t3, golden("table3.json")).empty());
  EXPECT_FALSE(render_table(t3).empty());
}

TEST(RunMatrix, DiffReportsChangedCell) {
  const auto attacks = load_corpus(kDir + "/attacks");
  const auto t2 = run_matrix(attacks, attack_table_modes());
  Json g = golden("table2.json");
  g["rows"][0]["cells"]["keylogger"] = "Prevented";
  const auto diff = diff_against_golden(t2, g);
  ASSERT_EQ(diff.size(), 1u);
  EXPECT_NE(diff[0].find("keylogger"), std::string::npos);
}

TEST(RunMatrix, EmptyInput) {
  const std::vector<Scenario> none;
  const auto grid = run_matrix(none, app_table_modes());
  EXPECT_TRUE(grid.columns.empty());
}

}  // namespace
}  // namespace audiomon
