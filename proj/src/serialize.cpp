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

#include "audiomon/serialize.hpp"

namespace audiomon {

Json to_json(const Label& label) {
  Json j;
  j["secrecy"] = label.secrecy == Secrecy::High ? "high" : "low";
  j["integrity"] = label.integrity == Integrity::High ? "high" : "low";
  j["category"] = label.category ? Json(label.category->owner) : Json(nullptr);
  return j;
}

namespace {

Json endpoint_json(const Endpoint& e) {
  Json j;
  j["pid"] = e.pid ? Json(*e.pid) : Json(nullptr);
  j["label"] = to_string(e.label);
  return j;
}

}  // namespace

Json to_json(const AudioChannel& channel) {
  Json j;
  j["kind"] = to_string(channel.kind);
  j["source"] = endpoint_json(channel.source);
  j["sink"] = endpoint_json(channel.sink);
  j["content"] = to_string(channel.source_content);
  return j;
}

Json to_json(const ResolutionRecord& record) {
  Json j;
  j["kind"] = to_string(record.kind);
  j["resolver"] = record.resolver ? Json(to_string(*record.resolver)) : Json(nullptr);
  j["approved_by"] = record.approved_by ? Json(*record.approved_by) : Json(nullptr);
  j["channel"] = to_json(record.channel);
  return j;
}

namespace {

Json violations_json(const Decision& d) {
  Json out = Json::array();
  for (const auto& v : d.violations) {
    Json j;
    j["verdict"] = to_string(v.verdict);
    j["resolved"] = d.is_resolved(v.channel);
    j["channel"] = to_json(v.channel);
    out.push_back(std::move(j));
  }
  return out;
}

Json resolutions_json(const Decision& d) {
  Json out = Json::array();
  for (const auto& r : d.resolutions) out.push_back(to_json(r));
  return out;
}

}  // namespace

Json to_json(const Decision& decision) {
  Json j;
  j["time"] = decision.request.time;
  j["pid"] = decision.request.pid;
  j["device"] = to_string(decision.request.device);
  j["content"] = to_string(decision.request.content);
  j["outcome"] = to_string(decision.outcome);
  j["reason"] = to_string(decision.reason);
  j["violations"] = violations_json(decision);
  j["resolutions"] = resolutions_json(decision);
  return j;
}

Json to_json(const AuditRecord& record) {
  Json j;
  j["time"] = record.time;
  j["hook"] = to_string(record.hook);
  j["pid"] = record.pid;
  if (record.decision) {
    j["outcome"] = to_string(record.decision->outcome);
    j["reason"] = to_string(record.decision->reason);
    j["violations"] = violations_json(*record.decision);
    j["resolutions"] = resolutions_json(*record.decision);
  } else {
    j["outcome"] = nullptr;
    j["reason"] = nullptr;
    j["violations"] = Json::array();
    j["resolutions"] = Json::array();
  }
  j["session"] = record.session ? Json(record.session->value) : Json(nullptr);
  j["revoked"] = record.revoked;
  return j;
}

std::string audit_to_jsonl(std::span<const AuditRecord> log) {
  std::string out;
  for (const auto& r : log) {
    out += to_json(r).dump();
    out += '\n';
  }
  return out;
}

}  // namespace audiomon
