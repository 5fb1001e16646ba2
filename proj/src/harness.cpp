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

#include "audiomon/harness.hpp"

#include <algorithm>
#include <sstream>

#include "audiomon/error.hpp"

namespace audiomon {

namespace {

struct AppFlags {
  bool secrecy = false;
  bool integrity = false;
  bool category = false;
  bool blocked = false;

  void add(const std::vector<Violation>& unresolved) {
    if (unresolved.empty()) blocked = true;
    for (const auto& v : unresolved) {
      secrecy |= has_secrecy_violation(v.verdict);
      integrity |= has_integrity_violation(v.verdict);
      category |= v.verdict == FlowVerdict::CategoryViolation;
    }
  }

  AppResult result() const {
    if (secrecy && integrity) return AppResult::SIV;
    if (secrecy) return AppResult::SV;
    if (integrity) return AppResult::IV;
    if (category) return AppResult::CV;
    if (blocked) return AppResult::Blocked;
    return AppResult::Runs;
  }
};

class Replay {
 public:
  Replay(const Scenario& scenario, MonitorMode mode, const RunOptions& options)
      : scenario_(scenario),
        monitor_(MonitorConfig{mode, options.ttl.value_or(scenario.ttl.value_or(600)),
                               options.revoke_on_auth_change},
                 ApprovalOracle(scenario.oracle)) {
    outcome_.scenario = scenario.name;
    outcome_.mode = mode;
    for (const auto& p : scenario.processes) monitor_.register_process(p);
  }

  ScenarioOutcome run() {
    for (std::size_t i = 0; i < scenario_.events.size(); ++i) {
      const ScenarioEvent& e = scenario_.events[i];
      TraceEntry entry{e.time, event_name(e.action), std::nullopt, {}, {}};
      try {
        std::visit([&](const auto& a) { apply(a, e.time, entry); }, e.action);
      } catch (const MalformedScenarioError&) {
        throw;
      } catch (const Error& err) {
        throw MalformedScenarioError(scenario_.source,
                                     "events[" + std::to_string(i) + "]: " + err.what());
      } catch (const std::invalid_argument& err) {
        throw MalformedScenarioError(scenario_.source,
                                     "events[" + std::to_string(i) + "]: " + err.what());
      }
      record(std::move(entry));
    }
    if (saw_assert_) {
      outcome_.attack_result = realized_ ? AttackResult::Succeeded : AttackResult::Prevented;
    }
    if (scenario_.subject) outcome_.app_result = app_.result();
    outcome_.prompts = monitor_.prompt_count();
    const auto log = monitor_.audit_log();
    outcome_.audit.assign(log.begin(), log.end());
    return std::move(outcome_);
  }

 private:
  void apply(const event::Spawn& a, Ticks, TraceEntry& entry) {
    monitor_.register_process(a.process);
    entry.note = "pid " + std::to_string(a.process.pid) + " (" + a.process.name + ", " +
                 to_string(a.process.party_class) + ")";
  }
  void apply(const event::SetAuth& a, Ticks t, TraceEntry& entry) {
    entry.revocations = monitor_.set_owner_authenticated(a.authenticated, t);
    entry.note = a.authenticated ? "owner authenticated" : "owner not authenticated";
  }
  void apply(const event::SetScreen& a, Ticks t, TraceEntry& entry) {
    monitor_.set_screen_on(a.on, t);
    entry.note = a.on ? "screen on" : "screen off";
  }
  void apply(const event::StartInput& a, Ticks t, TraceEntry& entry) {
    attempted_.insert({a.pid, DeviceKind::Microphone});
    entry.decision = monitor_.start_input(a.pid, a.content, t);
  }
  void apply(const event::StartOutput& a, Ticks t, TraceEntry& entry) {
    attempted_.insert({a.pid, DeviceKind::Speaker});
    entry.decision = monitor_.start_output(a.pid, a.content, t);
  }
  void apply(const event::StopInput& a, Ticks t, TraceEntry& entry) {
    const auto& mic = monitor_.device_state().mic_session();
    if (skip_stop(a.pid, DeviceKind::Microphone, mic && mic->pid == a.pid, entry)) return;
    monitor_.stop_input(a.pid, t);
    entry.note = "pid " + std::to_string(a.pid);
  }
  void apply(const event::StopOutput& a, Ticks t, TraceEntry& entry) {
    const auto& spk = monitor_.device_state().speaker_sessions();
    const bool held = std::any_of(spk.begin(), spk.end(),
                                  [&](const AudioSession& s) { return s.pid == a.pid; });
    if (skip_stop(a.pid, DeviceKind::Speaker, held, entry)) return;
    monitor_.stop_output(monitor_.output_session_of(a.pid), t);
    entry.note = "pid " + std::to_string(a.pid);
  }

  // A workload stops what it tried to start; when the start was denied or
  // the session revoked there is nothing to release and the hook is not
  // invoked. Stopping something never attempted is a scenario error and
  // reaches the monitor, which rejects it.
  bool skip_stop(Pid pid, DeviceKind device, bool held, TraceEntry& entry) const {
    if (held || !attempted_.contains({pid, device})) return false;
    entry.note = "pid " + std::to_string(pid) + " holds no " + to_string(device) +
                 " session; nothing to stop";
    return true;
  }
  void apply(const event::ExternalUtterance& a, Ticks, TraceEntry& entry) {
    const auto& mic = monitor_.device_state().mic_session();
    entry.note = std::string(a.authenticated ? "owner" : "unauthenticated party") +
                 " speaks; " +
                 (mic ? "heard by pid " + std::to_string(mic->pid) : "nobody listening");
  }
  void apply(const event::AttackRealized& a, Ticks, TraceEntry& entry) {
    saw_assert_ = true;
    const DeviceState& s = monitor_.device_state();
    bool holds = false;
    if (a.device == DeviceKind::Microphone) {
      holds = s.mic_session() && s.mic_session()->pid == a.pid;
    } else {
      holds = std::any_of(s.speaker_sessions().begin(), s.speaker_sessions().end(),
                          [&](const AudioSession& x) { return x.pid == a.pid; });
    }
    realized_ |= holds;
    entry.note = "pid " + std::to_string(a.pid) + " on " + to_string(a.device) + ": " +
                 (holds ? "attack realized" : "not realized");
  }

  void record(TraceEntry entry) {
    const NotificationState n = monitor_.notifications();
    outcome_.user_notified |= n.mic_icon_visible || n.light_blinking;
    const auto subject = scenario_.subject;
    if (entry.decision) {
      const Decision& d = *entry.decision;
      for (const auto& c : d.channels) outcome_.channel_kinds.insert(c.kind);
      if (subject && d.request.pid == *subject && !d.granted()) app_.add(d.unresolved());
    }
    for (const auto& r : entry.revocations) {
      if (subject && r.session.pid == *subject) app_.add(r.violations);
    }
    outcome_.trace.push_back(std::move(entry));
  }

  const Scenario& scenario_;
  ReferenceMonitor monitor_;
  ScenarioOutcome outcome_;
  AppFlags app_;
  std::set<std::pair<Pid, DeviceKind>> attempted_;
  bool saw_assert_ = false;
  bool realized_ = false;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

ScenarioOutcome run_scenario(const Scenario& scenario, MonitorMode mode,
                             const RunOptions& options) {
  return Replay(scenario, mode, options).run();
}

ResultGrid run_matrix(std::span<const Scenario> scenarios, std::span<const MonitorMode> modes,
                      const RunOptions& options) {
  ResultGrid grid;
  if (scenarios.empty()) return grid;
  const bool apps = std::all_of(scenarios.begin(), scenarios.end(), [](const Scenario& s) {
    return s.kind == ScenarioKind::App;
  });
  grid.table = apps ? "apps" : "attacks";
  for (const auto& s : scenarios) {
    grid.columns.push_back(s.name);
    grid.column_titles.push_back(s.title);
  }
  std::vector<ScenarioOutcome> full_runs;
  for (const MonitorMode mode : modes) {
    GridRow row{to_string(mode), mode_title(mode), {}};
    for (const auto& s : scenarios) {
      ScenarioOutcome o = run_scenario(s, mode, options);
      row.cells.push_back(cell_text(o));
      if (mode == MonitorMode::Full) full_runs.push_back(std::move(o));
    }
    grid.rows.push_back(std::move(row));
  }
  if (apps) {
    if (full_runs.empty()) {
      for (const auto& s : scenarios) {
        full_runs.push_back(run_scenario(s, MonitorMode::Full, options));
      }
    }
    GridRow approval{"requested_user_approval", "Requested User Approval", {}};
    GridRow notified{"user_notified", "User Notified", {}};
    for (const auto& o : full_runs) {
      approval.cells.push_back(yes_no(o.prompts > 0));
      notified.cells.push_back(yes_no(o.user_notified));
    }
    grid.annotations.push_back(std::move(approval));
    grid.annotations.push_back(std::move(notified));
  }
  return grid;
}

std::string to_string(AttackResult r) {
  return r == AttackResult::Prevented ? "Prevented" : "Succeeded";
}

std::string to_string(AppResult r) {
  switch (r) {
    case AppResult::Runs:
      return "Runs";
    case AppResult::SV:
      return "SV";
    case AppResult::IV:
      return "IV";
    case AppResult::SIV:
      return "SIV";
    case AppResult::CV:
      return "CV";
    case AppResult::Blocked:
      return "Blocked";
  }
  return "?";
}

std::string cell_text(const ScenarioOutcome& outcome) {
  if (outcome.attack_result) return to_string(*outcome.attack_result);
  if (outcome.app_result) return to_string(*outcome.app_result);
  return "-";
}

namespace {

Json row_json(const GridRow& row, const std::vector<std::string>& columns, bool is_mode) {
  Json j;
  j[is_mode ? "mode" : "key"] = row.key;
  j["title"] = row.title;
  Json cells = Json::object();
  for (std::size_t i = 0; i < columns.size(); ++i) cells[columns[i]] = row.cells[i];
  j["cells"] = std::move(cells);
  return j;
}

}  // namespace

Json to_json(const ResultGrid& grid) {
  Json j;
  j["table"] = grid.table;
  j["columns"] = grid.columns;
  j["column_titles"] = grid.column_titles;
  j["rows"] = Json::array();
  for (const auto& r : grid.rows) j["rows"].push_back(row_json(r, grid.columns, true));
  j["annotations"] = Json::array();
  for (const auto& r : grid.annotations) {
    j["annotations"].push_back(row_json(r, grid.columns, false));
  }
  return j;
}

Json to_json(const ScenarioOutcome& outcome) {
  Json j;
  j["scenario"] = outcome.scenario;
  j["mode"] = to_string(outcome.mode);
  j["attack_result"] =
      outcome.attack_result ? Json(to_string(*outcome.attack_result)) : Json(nullptr);
  j["app_result"] = outcome.app_result ? Json(to_string(*outcome.app_result)) : Json(nullptr);
  j["prompts"] = outcome.prompts;
  j["user_notified"] = outcome.user_notified;
  j["channel_kinds"] = Json::array();
  for (const auto k : outcome.channel_kinds) j["channel_kinds"].push_back(to_string(k));
  j["trace"] = Json::array();
  for (const auto& t : outcome.trace) {
    Json e;
    e["time"] = t.time;
    e["event"] = t.event;
    e["note"] = t.note;
    e["decision"] = t.decision ? to_json(*t.decision) : Json(nullptr);
    e["revocations"] = Json::array();
    for (const auto& r : t.revocations) {
      Json rj;
      rj["pid"] = r.session.pid;
      rj["device"] = to_string(r.session.device);
      rj["session"] = r.session.id.value;
      rj["violations"] = Json::array();
      for (const auto& v : r.violations) {
        rj["violations"].push_back(Json{{"verdict", to_string(v.verdict)},
                                        {"channel", to_json(v.channel)}});
      }
      e["revocations"].push_back(std::move(rj));
    }
    j["trace"].push_back(std::move(e));
  }
  return j;
}

std::string render_table(const ResultGrid& grid) {
  if (grid.columns.empty()) return "(no scenarios)\n";
  // One line per scenario, one column per mode.
  std::size_t name_w = 8;
  for (const auto& t : grid.column_titles) name_w = std::max(name_w, t.size());
  std::vector<const GridRow*> rows;
  for (const auto& r : grid.rows) rows.push_back(&r);
  for (const auto& r : grid.annotations) rows.push_back(&r);
  std::vector<std::size_t> widths;
  for (const auto* r : rows) {
    std::size_t w = r->key.size();
    for (const auto& c : r->cells) w = std::max(w, c.size());
    widths.push_back(w);
  }

  std::ostringstream out;
  const auto pad = [&out](const std::string& s, std::size_t w) {
    out << s << std::string(w - std::min(w, s.size()), ' ');
  };
  pad(grid.table == "apps" ? "app" : "scenario", name_w);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    out << "  ";
    pad(rows[k]->key, widths[k]);
  }
  out << '\n';
  for (std::size_t i = 0; i < grid.columns.size(); ++i) {
    pad(grid.column_titles[i], name_w);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      out << "  ";
      pad(rows[k]->cells[i], widths[k]);
    }
    out << '\n';
  }
  return out.str();
}

std::string render_outcome(const Scenario& scenario, const ScenarioOutcome& outcome) {
  std::ostringstream out;
  out << scenario.title << " [" << scenario.name << "] under " << mode_title(outcome.mode)
      << '\n';
  for (const auto& t : outcome.trace) {
    out << "  t=" << t.time << ' ' << t.event;
    if (t.decision) {
      const Decision& d = *t.decision;
      out << " pid " << d.request.pid << ' ' << to_string(d.request.content) << " -> "
          << to_string(d.outcome);
      if (!d.granted()) out << " (" << to_string(d.reason) << ')';
      for (const auto& v : d.violations) {
        out << "\n      " << to_string(v.verdict) << ' ' << to_string(v.channel)
            << (d.is_resolved(v.channel) ? " [resolved]" : "");
      }
    } else if (!t.note.empty()) {
      out << ": " << t.note;
    }
    for (const auto& r : t.revocations) {
      out << "\n      revoked pid " << r.session.pid << ' ' << to_string(r.session.device);
    }
    out << '\n';
  }
  out << "result: " << cell_text(outcome) << "  prompts: " << outcome.prompts
      << "  notified: " << (outcome.user_notified ? "yes" : "no") << '\n';
  return out.str();
}

std::vector<std::string> diff_against_golden(const ResultGrid& grid, const Json& golden) {
  std::vector<std::string> diffs;
  const auto find_row = [&](const char* array, const char* key_field,
                            const std::string& key) -> const Json* {
    if (!golden.contains(array) || !golden.at(array).is_array()) return nullptr;
    for (const auto& r : golden.at(array)) {
      if (r.value(key_field, std::string()) == key) return &r;
    }
    return nullptr;
  };
  const auto compare = [&](const GridRow& row, const char* array, const char* key_field) {
    const Json* g = find_row(array, key_field, row.key);
    if (g == nullptr || !g->contains("cells")) {
      diffs.push_back("no golden row for " + row.key);
      return;
    }
    const Json& cells = g->at("cells");
    for (const auto& [name, expected] : cells.items()) {
      const auto it = std::find(grid.columns.begin(), grid.columns.end(), name);
      if (it == grid.columns.end()) {
        diffs.push_back(row.key + "/" + name + ": missing from run");
      }
    }
    for (std::size_t i = 0; i < grid.columns.size(); ++i) {
      const std::string& name = grid.columns[i];
      if (!cells.contains(name)) {
        diffs.push_back(row.key + "/" + name + ": not in golden table");
        continue;
      }
      const std::string expected = cells.at(name).get<std::string>();
      if (expected != row.cells[i]) {
        diffs.push_back(row.key + "/" + name + ": expected " + expected + ", got " +
                        row.cells[i]);
      }
    }
  };
  for (const auto& row : grid.rows) compare(row, "rows", "mode");
  for (const auto& row : grid.annotations) compare(row, "annotations", "key");
  return diffs;
}

const std::vector<MonitorMode>& attack_table_modes() {
  static const std::vector<MonitorMode> modes = {
      MonitorMode::BaseAndroid, MonitorMode::SimpleIsolation, MonitorMode::Full};
  return modes;
}

const std::vector<MonitorMode>& app_table_modes() {
  static const std::vector<MonitorMode> modes = {
      MonitorMode::SimpleIsolation, MonitorMode::MlsOnly,      MonitorMode::MlsUserApproval,
      MonitorMode::MlsResolver1,    MonitorMode::MlsResolver2, MonitorMode::Full};
  return modes;
}

}  // namespace audiomon
