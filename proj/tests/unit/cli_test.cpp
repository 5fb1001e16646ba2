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


#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json.hpp"

namespace audiomon {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "audiomon");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, RunReportsAttackOutcome) {
  const auto base = invoke({"run", "touchless_control", "--mode", "base"});
  EXPECT_EQ(base.code, 1);
  EXPECT_NE(base.out.find("Succeeded"), std::string::npos);
  const auto full = invoke({"run", "touchless_control", "--mode", "full"});
  EXPECT_EQ(full.code, 0);
  EXPECT_NE(full.out.find("Prevented"), std::string::npos);
}

TEST(Cli, JsonOutputParses) {
  const auto r = invoke({"run", "pandora", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("scenario"), "pandora");
}

TEST(Cli, AuditIsJsonLines) {
  const auto r = invoke({"audit", "keylogger", "--mode", "full"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    EXPECT_TRUE(nlohmann::json::parse(line).contains("hook"));
    ++n;
  }
  EXPECT_GE(n, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"run"}).code, 2);
  EXPECT_EQ(invoke({"run", "no_such_scenario"}).code, 2);
  EXPECT_EQ(invoke({"run", "keylogger", "--mode", "turbo"}).code, 2);
  EXPECT_EQ(invoke({"matrix"}).code, 2);
}

TEST(Cli, MatrixMatchesGolden) {
  EXPECT_EQ(invoke({"matrix", "--attacks"}).code, 0);
  const auto apps = invoke({"matrix", "--apps", "--format", "json"});
  EXPECT_EQ(apps.code, 0) << apps.err;
}

}  // namespace
}  // namespace audiomon
