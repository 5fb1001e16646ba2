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

#include <span>
#include <string>

#include "audiomon/monitor.hpp"
#include "json.hpp"

namespace audiomon {

using Json = nlohmann::ordered_json;

Json to_json(const Label& label);
Json to_json(const AudioChannel& channel);
Json to_json(const ResolutionRecord& record);
Json to_json(const Decision& decision);
// time, hook, pid, outcome, violations, resolutions (+ session, revoked).
Json to_json(const AuditRecord& record);

// One compact JSON object per line.
std::string audit_to_jsonl(std::span<const AuditRecord> log);

}  // namespace audiomon
