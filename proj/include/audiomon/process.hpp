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
#include <string>
#include <vector>

#include "audiomon/lattice.hpp"

namespace audiomon {

enum class PartyClass : std::uint8_t { SystemService, SystemApp, MarketApp };

enum class ResolverId : std::uint8_t {
  ApprovedSystemAudio,  // "Resolver 1"
  ApprovedMarketAudio,  // "Resolver 2"
};

// Scripted callback handler of a privileged process: the set of resolvers it
// accepts when the monitor asks it to vouch for an unsafe flow.
struct ResolverCallback {
  std::vector<ResolverId> accepts;

  bool accepts_resolver(ResolverId id) const;
};

struct ProcessRecord {
  Pid pid = 0;
  PartyClass party_class = PartyClass::MarketApp;
  std::string name;
  bool has_record_audio_permission = false;
  std::optional<ResolverCallback> resolver_callback;
};

// 1..1000 system services, 1001..2000 system apps, 2001 and above market
// apps. Throws InvalidPidError for pid < 1.
PartyClass classify_pid(std::int64_t pid);

bool is_privileged(PartyClass c);

// Label of an internal party, derived from its pid alone.
Label label_for_pid(Pid pid);

// Builds a record whose class is derived from the pid.
ProcessRecord make_process(Pid pid, std::string name, bool record_audio,
                           std::optional<ResolverCallback> callback = std::nullopt);

class ProcessRegistry {
 public:
  // Throws DuplicatePidError, InvalidPidError, or std::invalid_argument when
  // the record is inconsistent (class/pid mismatch, callback on a market app).
  void add(ProcessRecord record);

  bool contains(Pid pid) const { return processes_.contains(pid); }
  const ProcessRecord& at(Pid pid) const;  // throws UnknownPidError
  const ProcessRecord* find(Pid pid) const;

  Label label_for_process(Pid pid) const;
  bool check_record_audio_permission(Pid pid) const;

  std::size_t size() const { return processes_.size(); }
  const std::map<Pid, ProcessRecord>& processes() const { return processes_; }

 private:
  std::map<Pid, ProcessRecord> processes_;
};

std::string to_string(PartyClass c);
std::string to_string(ResolverId id);
std::optional<ResolverId> parse_resolver_id(const std::string& text);

}  // namespace audiomon
