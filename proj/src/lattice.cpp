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

#include "audiomon/lattice.hpp"

namespace audiomon {

std::string to_string(const Label& label) {
  std::string out = "(";
  out += label.secrecy == Secrecy::High ? "HS" : "LS";
  out += ",";
  out += label.integrity == Integrity::High ? "HI" : "LI";
  if (label.category) {
    out += ",{C" + std::to_string(label.category->owner) + "}";
  }
  out += ")";
  return out;
}

std::string to_string(FlowVerdict verdict) {
  switch (verdict) {
    case FlowVerdict::Safe:
      return "Safe";
    case FlowVerdict::SecrecyViolation:
      return "SV";
    case FlowVerdict::IntegrityViolation:
      return "IV";
    case FlowVerdict::SecrecyAndIntegrityViolation:
      return "SIV";
    case FlowVerdict::CategoryViolation:
      return "CV";
  }
  return "?";
}

}  // namespace audiomon
