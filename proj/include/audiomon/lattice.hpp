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

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace audiomon {

using Pid = std::int32_t;

enum class Secrecy : std::uint8_t { Low, High };
enum class Integrity : std::uint8_t { Low, High };

// Compartment separating market apps from one another. One per app, keyed by
// the owning process.
struct Category {
  Pid owner = 0;

  friend auto operator<=>(const Category&, const Category&) = default;
};

// A point in the secrecy x integrity x category lattice. At most one category
// is carried, and only by (Low, Low) subjects.
struct Label {
  Secrecy secrecy = Secrecy::Low;
  Integrity integrity = Integrity::Low;
  std::optional<Category> category;

  bool is_valid() const {
    return !category.has_value() ||
           (secrecy == Secrecy::Low && integrity == Integrity::Low);
  }

  friend auto operator<=>(const Label&, const Label&) = default;
};

enum class FlowVerdict : std::uint8_t {
  Safe,
  SecrecyViolation,
  IntegrityViolation,
  SecrecyAndIntegrityViolation,
  CategoryViolation,
};

constexpr Label high_label() { return {Secrecy::High, Integrity::High, std::nullopt}; }

constexpr Label app_label(Pid owner) {
  return {Secrecy::Low, Integrity::Low, Category{owner}};
}

// Classifies one directed flow src -> dst. Secrecy: no High -> Low.
// Integrity: no Low -> High. Two (Low, Low) parties must share a category.
constexpr FlowVerdict flow_safe(const Label& src, const Label& dst) {
  const bool secrecy = src.secrecy == Secrecy::High && dst.secrecy == Secrecy::Low;
  const bool integrity =
      src.integrity == Integrity::Low && dst.integrity == Integrity::High;
  if (secrecy && integrity) return FlowVerdict::SecrecyAndIntegrityViolation;
  if (secrecy) return FlowVerdict::SecrecyViolation;
  if (integrity) return FlowVerdict::IntegrityViolation;
  const auto low_low = [](const Label& l) {
    return l.secrecy == Secrecy::Low && l.integrity == Integrity::Low;
  };
  if (low_low(src) && low_low(dst) && src.category != dst.category) {
    return FlowVerdict::CategoryViolation;
  }
  return FlowVerdict::Safe;
}

constexpr bool has_secrecy_violation(FlowVerdict v) {
  return v == FlowVerdict::SecrecyViolation ||
         v == FlowVerdict::SecrecyAndIntegrityViolation;
}

constexpr bool has_integrity_violation(FlowVerdict v) {
  return v == FlowVerdict::IntegrityViolation ||
         v == FlowVerdict::SecrecyAndIntegrityViolation;
}

// "(HS,HI)", "(LS,LI,{C3000})".
std::string to_string(const Label& label);
// Short codes: "Safe", "SV", "IV", "SIV", "CV".
std::string to_string(FlowVerdict verdict);

}  // namespace audiomon
