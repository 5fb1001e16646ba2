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

#include "audiomon/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "audiomon/error.hpp"

namespace audiomon {

namespace {

using nlohmann::json;

class Parser {
 public:
  explicit Parser(std::string source) : source_(std::move(source)) {}

  Scenario parse(const json& doc) {
    if (!doc.is_object()) fail("", "top level must be an object");
    Scenario s;
    s.source = source_;
    s.name = require_string(doc, "name", "");
    s.title = doc.contains("title") ? require_string(doc, "title", "") : s.name;
    const std::string kind = doc.value("kind", std::string("attack"));
    if (kind == "attack") {
      s.kind = ScenarioKind::Attack;
    } else if (kind == "app") {
      s.kind = ScenarioKind::App;
    } else {
      fail("kind", "expected \"attack\" or \"app\", got \"" + kind + "\"");
    }
    s.order = optional_int(doc, "order", "").value_or(0);
    if (const auto n = optional_int(doc, "attack_scenario", "")) {
      s.attack_scenario = static_cast<int>(*n);
    }
    if (const auto t = optional_int(doc, "channel_type", "")) {
      if (*t < 1 || *t > 3) fail("channel_type", "must be 1, 2 or 3");
      s.channel_type = static_cast<ChannelKind>(*t - 1);
    }
    if (const auto ttl = optional_int(doc, "ttl", "")) {
      if (*ttl <= 0) fail("ttl", "must be positive");
      s.ttl = *ttl;
    }

    std::map<Pid, std::vector<ResolverId>> callbacks;
    if (doc.contains("callbacks")) {
      const json& cb = doc.at("callbacks");
      if (!cb.is_object()) fail("callbacks", "must map pid -> list of resolvers");
      for (const auto& [key, list] : cb.items()) {
        Pid pid = 0;
        try {
          pid = static_cast<Pid>(std::stol(key));
        } catch (const std::exception&) {
          fail("callbacks", "key \"" + key + "\" is not a pid");
        }
        callbacks[pid] = parse_resolver_list(list, "callbacks." + key);
      }
    }

    if (doc.contains("processes")) {
      const json& procs = doc.at("processes");
      if (!procs.is_array()) fail("processes", "must be an array");
      for (std::size_t i = 0; i < procs.size(); ++i) {
        s.processes.push_back(parse_process(procs[i], "processes[" + std::to_string(i) + "]"));
      }
    }
    for (auto& [pid, list] : callbacks) {
      auto it = std::find_if(s.processes.begin(), s.processes.end(),
                             [pid = pid](const ProcessRecord& p) { return p.pid == pid; });
      if (it == s.processes.end()) {
        fail("callbacks", "pid " + std::to_string(pid) + " is not declared in processes");
      }
      attach_callback(*it, std::move(list), "callbacks");
    }
    for (const auto& p : s.processes) declare(p.pid, "processes");

    if (doc.contains("oracle")) s.oracle = parse_oracle(doc.at("oracle"));

    if (!doc.contains("events") || !doc.at("events").is_array()) {
      fail("events", "missing event array");
    }
    const json& events = doc.at("events");
    Ticks last = 0;
    for (std::size_t i = 0; i < events.size(); ++i) {
      const std::string where = "events[" + std::to_string(i) + "]";
      ScenarioEvent e = parse_event(events[i], where);
      if (e.time < last) fail(where, "time " + std::to_string(e.time) + " is before " +
                                         std::to_string(last));
      last = e.time;
      if (const auto* spawn = std::get_if<event::Spawn>(&e.action)) {
        declare(spawn->process.pid, where);
      }
      s.events.push_back(std::move(e));
    }

    if (const auto subject = optional_int(doc, "subject", "")) {
      if (!known_.contains(static_cast<Pid>(*subject))) {
        fail("subject", "pid " + std::to_string(*subject) + " is never declared");
      }
      s.subject = static_cast<Pid>(*subject);
    }
    return s;
  }

 private:
  [[noreturn]] void fail(const std::string& where, const std::string& what) const {
    throw MalformedScenarioError(source_, where.empty() ? what : where + ": " + what);
  }

  std::string require_string(const json& j, const char* key, const std::string& where) const {
    if (!j.contains(key) || !j.at(key).is_string()) {
      fail(where, std::string("missing string field \"") + key + "\"");
    }
    return j.at(key).get<std::string>();
  }

  std::optional<std::int64_t> optional_int(const json& j, const char* key,
                                           const std::string& where) const {
    if (!j.contains(key)) return std::nullopt;
    if (!j.at(key).is_number_integer()) {
      fail(where, std::string("field \"") + key + "\" must be an integer");
    }
    return j.at(key).get<std::int64_t>();
  }

  std::int64_t require_int(const json& j, const char* key, const std::string& where) const {
    const auto v = optional_int(j, key, where);
    if (!v) fail(where, std::string("missing integer field \"") + key + "\"");
    return *v;
  }

  bool require_bool(const json& j, const char* key, const std::string& where) const {
    if (!j.contains(key) || !j.at(key).is_boolean()) {
      fail(where, std::string("missing boolean field \"") + key + "\"");
    }
    return j.at(key).get<bool>();
  }

  Pid require_pid(const json& j, const std::string& where) const {
    const auto pid = require_int(j, "pid", where);
    if (pid < 1) fail(where, "pid must be positive");
    if (!known_.contains(static_cast<Pid>(pid))) {
      fail(where, "pid " + std::to_string(pid) + " has not been spawned");
    }
    return static_cast<Pid>(pid);
  }

  ContentTag parse_content(const json& j, const std::string& where) const {
    const std::string c = j.value("content", std::string("arbitrary"));
    if (c == "approved") return ContentTag::ApprovedAudio;
    if (c == "arbitrary") return ContentTag::Arbitrary;
    fail(where, "content must be \"approved\" or \"arbitrary\"");
  }

  DeviceKind parse_device(const json& j, const std::string& where) const {
    const std::string d = require_string(j, "device", where);
    if (d == "microphone") return DeviceKind::Microphone;
    if (d == "speaker") return DeviceKind::Speaker;
    fail(where, "device must be \"microphone\" or \"speaker\"");
  }

  Approval parse_approval(const json& j, const std::string& where) const {
    if (j.is_string()) {
      if (j == "approve") return Approval::Approve;
      if (j == "deny") return Approval::Deny;
    }
    fail(where, "expected \"approve\" or \"deny\"");
  }

  std::vector<ResolverId> parse_resolver_list(const json& list,
                                              const std::string& where) const {
    if (!list.is_array()) fail(where, "must be an array of resolver names");
    std::vector<ResolverId> out;
    for (const auto& item : list) {
      const auto id = item.is_string() ? parse_resolver_id(item.get<std::string>())
                                       : std::nullopt;
      if (!id) fail(where, "unknown resolver " + item.dump());
      out.push_back(*id);
    }
    return out;
  }

  void attach_callback(ProcessRecord& p, std::vector<ResolverId> accepts,
                       const std::string& where) const {
    if (!is_privileged(p.party_class)) {
      fail(where, "market app " + std::to_string(p.pid) + " cannot receive callbacks");
    }
    if (!p.resolver_callback) p.resolver_callback = ResolverCallback{};
    for (auto id : accepts) p.resolver_callback->accepts.push_back(id);
  }

  ProcessRecord parse_process(const json& j, const std::string& where) const {
    if (!j.is_object()) fail(where, "process must be an object");
    const auto pid = require_int(j, "pid", where);
    if (pid < 1) fail(where, "pid must be positive");
    ProcessRecord p = make_process(static_cast<Pid>(pid), j.value("name", std::string()),
                                   j.value("record_audio", false));
    if (j.contains("callbacks")) {
      attach_callback(p, parse_resolver_list(j.at("callbacks"), where + ".callbacks"), where);
    }
    return p;
  }

  ApprovalScript parse_oracle(const json& j) const {
    if (!j.is_object()) fail("oracle", "must be an object");
    ApprovalScript script;
    if (j.contains("default")) script.fallback = parse_approval(j.at("default"), "oracle.default");
    if (j.contains("by_pid")) {
      if (!j.at("by_pid").is_object()) fail("oracle.by_pid", "must be an object");
      for (const auto& [key, answer] : j.at("by_pid").items()) {
        Pid pid = 0;
        try {
          pid = static_cast<Pid>(std::stol(key));
        } catch (const std::exception&) {
          fail("oracle.by_pid", "key \"" + key + "\" is not a pid");
        }
        script.by_pid[pid] = parse_approval(answer, "oracle.by_pid." + key);
      }
    }
    if (j.contains("sequence")) {
      if (!j.at("sequence").is_array()) fail("oracle.sequence", "must be an array");
      for (const auto& a : j.at("sequence")) {
        script.sequence.push_back(parse_approval(a, "oracle.sequence"));
      }
    }
    return script;
  }

  ScenarioEvent parse_event(const json& j, const std::string& where) {
    if (!j.is_object()) fail(where, "event must be an object");
    ScenarioEvent e;
    e.time = require_int(j, "t", where);
    if (e.time < 0) fail(where, "time must be non-negative");
    const std::string op = require_string(j, "op", where);
    if (op == "spawn") {
      if (!j.contains("process")) fail(where, "spawn needs a process");
      ProcessRecord p = parse_process(j.at("process"), where + ".process");
      if (known_.contains(p.pid)) fail(where, "pid " + std::to_string(p.pid) + " already exists");
      e.action = event::Spawn{std::move(p)};
    } else if (op == "set_auth") {
      e.action = event::SetAuth{require_bool(j, "value", where)};
    } else if (op == "set_screen") {
      e.action = event::SetScreen{require_bool(j, "value", where)};
    } else if (op == "start_input") {
      e.action = event::StartInput{require_pid(j, where), parse_content(j, where)};
    } else if (op == "start_output") {
      e.action = event::StartOutput{require_pid(j, where), parse_content(j, where)};
    } else if (op == "stop_input") {
      e.action = event::StopInput{require_pid(j, where)};
    } else if (op == "stop_output") {
      e.action = event::StopOutput{require_pid(j, where)};
    } else if (op == "utterance") {
      e.action = event::ExternalUtterance{j.value("authenticated", false)};
    } else if (op == "assert") {
      const std::string expect = require_string(j, "expect", where);
      if (expect != "attack_realized") fail(where, "unknown expectation \"" + expect + "\"");
      e.action = event::AttackRealized{require_pid(j, where), parse_device(j, where)};
    } else {
      fail(where, "unknown op \"" + op + "\"");
    }
    return e;
  }

  void declare(Pid pid, const std::string& where) {
    if (!known_.insert(pid).second) {
      fail(where, "pid " + std::to_string(pid) + " declared twice");
    }
  }

  std::string source_;
  std::set<Pid> known_;
};

}  // namespace

Scenario parse_scenario(const nlohmann::json& doc, const std::string& source) {
  return Parser(source).parse(doc);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MalformedScenarioError(path.string(), "cannot open file");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedScenarioError(path.string(), e.what());
  }
  return parse_scenario(doc, path.string());
}

std::vector<Scenario> load_corpus(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw MalformedScenarioError(dir.string(), "not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<Scenario> out;
  for (const auto& f : files) out.push_back(load_scenario(f));
  std::stable_sort(out.begin(), out.end(), [](const Scenario& a, const Scenario& b) {
    return a.order != b.order ? a.order < b.order : a.name < b.name;
  });
  return out;
}

std::string to_string(ScenarioKind kind) {
  return kind == ScenarioKind::Attack ? "attack" : "app";
}

std::string event_name(const EventAction& action) {
  struct Visitor {
    std::string operator()(const event::Spawn&) const { return "spawn"; }
    std::string operator()(const event::SetAuth&) const { return "set_auth"; }
    std::string operator()(const event::SetScreen&) const { return "set_screen"; }
    std::string operator()(const event::StartInput&) const { return "start_input"; }
    std::string operator()(const event::StartOutput&) const { return "start_output"; }
    std::string operator()(const event::StopInput&) const { return "stop_input"; }
    std::string operator()(const event::StopOutput&) const { return "stop_output"; }
    std::string operator()(const event::ExternalUtterance&) const { return "utterance"; }
    std::string operator()(const event::AttackRealized&) const { return "assert"; }
  };
  return std::visit(Visitor{}, action);
}

}  // namespace audiomon
