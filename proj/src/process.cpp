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

#include "audiomon/process.hpp"

#include <algorithm>
#include <stdexcept>

#include "audiomon/error.hpp"

namespace audiomon {

bool ResolverCallback::accepts_resolver(ResolverId id) const {
  return std::find(accepts.begin(), accepts.end(), id) != accepts.end();
}

PartyClass classify_pid(std::int64_t pid) {
  if (pid < 1) {
    throw InvalidPidError("pid must be positive, got " + std::to_string(pid));
  }
  if (pid <= 1000) return PartyClass::SystemService;
  if (pid <= 2000) return PartyClass::SystemApp;
  // 2001 falls between the documented ranges; treat it as least privileged.
  return PartyClass::MarketApp;
}

bool is_privileged(PartyClass c) { return c != PartyClass::MarketApp; }

Label label_for_pid(Pid pid) {
  if (is_privileged(classify_pid(pid))) return high_label();
  return app_label(pid);
}

ProcessRecord make_process(Pid pid, std::string name, bool record_audio,
                           std::optional<ResolverCallback> callback) {
  return ProcessRecord{pid, classify_pid(pid), std::move(name), record_audio,
                       std::move(callback)};
}

void ProcessRegistry::add(ProcessRecord record) {
  const PartyClass expected = classify_pid(record.pid);
  if (record.party_class != expected) {
    throw std::invalid_argument("process " + std::to_string(record.pid) +
                                " declared as " + to_string(record.party_class) +
                                " but its pid classifies as " + to_string(expected));
  }
  if (record.resolver_callback && !is_privileged(record.party_class)) {
    throw std::invalid_argument("market app " + std::to_string(record.pid) +
                                " cannot register a resolver callback");
  }
  const Pid pid = record.pid;
  if (!processes_.emplace(pid, std::move(record)).second) {
    throw DuplicatePidError("pid " + std::to_string(pid) + " already registered");
  }
}

const ProcessRecord& ProcessRegistry::at(Pid pid) const {
  const auto* p = find(pid);
  if (p == nullptr) throw UnknownPidError("unknown pid " + std::to_string(pid));
  return *p;
}

const ProcessRecord* ProcessRegistry::find(Pid pid) const {
  const auto it = processes_.find(pid);
  return it == processes_.end() ? nullptr : &it->second;
}

Label ProcessRegistry::label_for_process(Pid pid) const {
  return label_for_pid(at(pid).pid);
}

bool ProcessRegistry::check_record_audio_permission(Pid pid) const {
  return at(pid).has_record_audio_permission;
}

std::string to_string(PartyClass c) {
  switch (c) {
    case PartyClass::SystemService:
      return "system_service";
    case PartyClass::SystemApp:
      return "system_app";
    case PartyClass::MarketApp:
      return "market_app";
  }
  return "?";
}

std::string to_string(ResolverId id) {
  switch (id) {
    case ResolverId::ApprovedSystemAudio:
      return "resolver1";
    case ResolverId::ApprovedMarketAudio:
      return "resolver2";
  }
  return "?";
}

std::optional<ResolverId> parse_resolver_id(const std::string& text) {
  if (text == "resolver1") return ResolverId::ApprovedSystemAudio;
  if (text == "resolver2") return ResolverId::ApprovedMarketAudio;
  return std::nullopt;
}

}  // namespace audiomon
