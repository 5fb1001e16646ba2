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

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "audiomon/monitor.hpp"
#include "audiomon/scenario.hpp"
#include "audiomon/serialize.hpp"

namespace audiomon {

enum class AttackResult : std::uint8_t { Prevented, Succeeded };

// Runs, or the worst unresolved lattice violation the app hit. Blocked
// covers denials with no lattice verdict (permission, isolation, busy).
enum class AppResult : std::uint8_t { Runs, SV, IV, SIV, CV, Blocked };

struct TraceEntry {
  Ticks time = 0;
  std::string event;
  std::optional<Decision> decision;
  std::vector<RevocationRecord> revocations;
  std::string note;
};

struct ScenarioOutcome {
  std::string scenario;
  MonitorMode mode = MonitorMode::Full;
  std::optional<AttackResult> attack_result;
  std::optional<AppResult> app_result;
  int prompts = 0;
  bool user_notified = false;  // icon or light was on at some point
  std::set<ChannelKind> channel_kinds;
  std::vector<TraceEntry> trace;
  std::vector<AuditRecord> audit;
};

struct RunOptions {
  std::optional<Ticks> ttl;  // overrides the scenario's ttl
  bool revoke_on_auth_change = true;
};

// Replays `scenario` on a fresh monitor. Throws MalformedScenarioError when
// an event cannot be applied (e.g. stopping a session that does not exist).
ScenarioOutcome run_scenario(const Scenario& scenario, MonitorMode mode,
                             const RunOptions& options = {});

struct GridRow {
  std::string key;    // mode name, or annotation key
  std::string title;
  std::vector<std::string> cells;  // parallel to ResultGrid::columns
};

struct ResultGrid {
  std::string table;  // "attacks" or "apps"
  std::vector<std::string> columns;
  std::vector<std::string> column_titles;
  std::vector<GridRow> rows;
  // App tables only: "Requested User Approval" and "User Notified", both
  // measured under the full monitor.
  std::vector<GridRow> annotations;
};

ResultGrid run_matrix(std::span<const Scenario> scenarios, std::span<const MonitorMode> modes,
                      const RunOptions& options = {});

std::string to_string(AttackResult r);
std::string to_string(AppResult r);
std::string cell_text(const ScenarioOutcome& outcome);

Json to_json(const ResultGrid& grid);
Json to_json(const ScenarioOutcome& outcome);
std::string render_table(const ResultGrid& grid);
std::string render_outcome(const Scenario& scenario, const ScenarioOutcome& outcome);

// Cells of `grid` that differ from `golden` (same JSON layout as a report).
// Only rows present in `grid` are compared. Empty means a match.
std::vector<std::string> diff_against_golden(const ResultGrid& grid, const Json& golden);

const std::vector<MonitorMode>& attack_table_modes();
const std::vector<MonitorMode>& app_table_modes();

}  // namespace audiomon
