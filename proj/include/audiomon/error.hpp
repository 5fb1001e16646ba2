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

#include <stdexcept>
#include <string>

namespace audiomon {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidPidError : public Error {
 public:
  using Error::Error;
};

class UnknownPidError : public Error {
 public:
  using Error::Error;
};

class DuplicatePidError : public Error {
 public:
  using Error::Error;
};

class DeviceBusyError : public Error {
 public:
  using Error::Error;
};

class UnknownSessionError : public Error {
 public:
  using Error::Error;
};

class ClockError : public Error {
 public:
  using Error::Error;
};

// Raised while loading or replaying a scenario. `where` names the offending
// file/event so diagnostics can point at it.
class MalformedScenarioError : public Error {
 public:
  MalformedScenarioError(const std::string& where, const std::string& what)
      : Error(where.empty() ? what : where + ": " + what) {}
};

}  // namespace audiomon
