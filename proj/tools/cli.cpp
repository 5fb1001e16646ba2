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

#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "audiomon/error.hpp"
#include "audiomon/harness.hpp"
#include "audiomon/random_stream.hpp"
#include "audiomon/serialize.hpp"

namespace audiomon::cli {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

fs::path corpus_dir() {
  if (const char* env = std::getenv("AUDIOMON_SCENARIO_DIR"); env != nullptr && *env) {
    return env;
  }
  return AUDIOMON_DEFAULT_SCENARIO_DIR;
}

// Accepts a path, a path relative to the corpus, or a bare scenario name.
fs::path resolve_scenario(const std::string& arg) {
  const fs::path p(arg);
  const fs::path dir = corpus_dir();
  std::vector<fs::path> candidates = {p, dir / p, dir / "attacks" / p.filename(),
                                      dir / "apps" / p.filename()};
  if (p.extension() != ".json") {
    candidates.push_back(dir / "attacks" / (p.filename().string() + ".json"));
    candidates.push_back(dir / "apps" / (p.filename().string() + ".json"));
  }
  for (const auto& c : candidates) {
    if (fs::is_regular_file(c)) return c;
  }
  throw UsageError("scenario not found: " + arg);
}

MonitorMode mode_from(const std::string& text) {
  const auto m = parse_mode(text);
  if (!m) throw UsageError("unknown mode \"" + text + "\"");
  return *m;
}

void emit(const std::string& text, const std::string& output, std::ostream& out) {
  if (output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(output);
  if (!f) throw UsageError("cannot write " + output);
  f << text;
}

const std::vector<std::string>& mode_names() {
  static const std::vector<std::string> names = {
      "base", "isolation", "mls", "approval", "resolver1", "resolver2", "full"};
  return names;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Audio channel reference monitor simulator"};
  app.require_subcommand(1);

  std::string mode = "full";
  std::vector<std::string> modes;
  Ticks ttl = 600;
  std::string format = "table";
  bool no_revoke = false;
  std::string output;
  std::string scenario_arg;
  bool attacks = false;
  bool apps = false;
  std::string golden;
  std::string export_path;
  std::size_t streams = 10000;
  std::size_t events = 40;
  std::uint64_t seed = 1;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--ttl", ttl, "Event cache lifetime in ticks")->check(CLI::PositiveNumber);
    sub->add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"table", "json"}));
    sub->add_flag("--no-revoke", no_revoke, "Keep sessions when owner authentication changes");
    sub->add_option("--output,-o", output, "Write the report to a file instead of stdout");
  };

  auto* run_cmd = app.add_subcommand("run", "Replay one scenario under one mode");
  run_cmd->add_option("scenario", scenario_arg, "Scenario file or name")->required();
  run_cmd->add_option("--mode,-m", mode, "Monitor mode")->check(CLI::IsMember(mode_names()));
  add_common(run_cmd);

  auto* matrix_cmd = app.add_subcommand("matrix", "Reproduce a result table and diff it");
  auto* attacks_flag = matrix_cmd->add_flag("--attacks", attacks, "Attack prevention table");
  auto* apps_flag = matrix_cmd->add_flag("--apps", apps, "App functionality table");
  attacks_flag->excludes(apps_flag);
  matrix_cmd->add_option("--mode,-m", modes, "Restrict to these modes")
      ->check(CLI::IsMember(mode_names()));
  matrix_cmd->add_option("--golden", golden, "Golden table (defaults to the bundled one)");
  add_common(matrix_cmd);

  auto* audit_cmd = app.add_subcommand("audit", "Export the audit log of a scenario run");
  audit_cmd->add_option("scenario", scenario_arg, "Scenario file or name")->required();
  audit_cmd->add_option("--mode,-m", mode, "Monitor mode")->check(CLI::IsMember(mode_names()));
  audit_cmd->add_option("--export", export_path, "JSON Lines output path (default stdout)");
  audit_cmd->add_option("--ttl", ttl, "Event cache lifetime in ticks")
      ->check(CLI::PositiveNumber);
  audit_cmd->add_flag("--no-revoke", no_revoke,
                      "Keep sessions when owner authentication changes");

  auto* fuzz_cmd = app.add_subcommand("fuzz", "Check monitor invariants on random streams");
  fuzz_cmd->add_option("--streams", streams, "Number of random streams");
  fuzz_cmd->add_option("--events", events, "Events per stream");
  fuzz_cmd->add_option("--seed", seed, "Base seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunOptions options;
    options.revoke_on_auth_change = !no_revoke;

    if (run_cmd->parsed()) {
      // An explicit --ttl wins over the scenario's own value.
      if (run_cmd->count("--ttl") > 0) options.ttl = ttl;
      const Scenario s = load_scenario(resolve_scenario(scenario_arg));
      const ScenarioOutcome o = run_scenario(s, mode_from(mode), options);
      emit(format == "json" ? to_json(o).dump(2) + "\n" : render_outcome(s, o), output, out);
      return o.attack_result == AttackResult::Succeeded ? kExitFailure : kExitOk;
    }

    if (matrix_cmd->parsed()) {
      if (!attacks && !apps) throw UsageError("matrix needs --attacks or --apps");
      if (matrix_cmd->count("--ttl") > 0) options.ttl = ttl;
      const fs::path dir = corpus_dir();
      const std::vector<Scenario> corpus = load_corpus(dir / (attacks ? "attacks" : "apps"));
      std::vector<MonitorMode> selected;
      for (const auto& m : modes) selected.push_back(mode_from(m));
      if (selected.empty()) selected = attacks ? attack_table_modes() : app_table_modes();

      const ResultGrid grid = run_matrix(corpus, selected, options);
      emit(format == "json" ? to_json(grid).dump(2) + "\n" : render_table(grid), output, out);

      const fs::path golden_path =
          golden.empty() ? dir / "golden" / (attacks ? "table2.json" : "table3.json")
                         : fs::path(golden);
      std::ifstream gf(golden_path);
      if (!gf) throw UsageError("cannot read golden table " + golden_path.string());
      const Json expected = Json::parse(gf);
      const auto diffs = diff_against_golden(grid, expected);
      for (const auto& d : diffs) err << "mismatch: " << d << '\n';
      if (!diffs.empty()) return kExitFailure;
      err << "matches " << golden_path.filename().string() << '\n';
      return kExitOk;
    }

    if (audit_cmd->parsed()) {
      if (audit_cmd->count("--ttl") > 0) options.ttl = ttl;
      const Scenario s = load_scenario(resolve_scenario(scenario_arg));
      const ScenarioOutcome o = run_scenario(s, mode_from(mode), options);
      emit(audit_to_jsonl(o.audit), export_path, out);
      return kExitOk;
    }

    if (fuzz_cmd->parsed()) {
      FuzzConfig config;
      config.streams = streams;
      config.events_per_stream = events;
      config.seed = seed;
      const auto t0 = std::chrono::steady_clock::now();
      const FuzzReport r = run_random_streams(config);
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      out << "streams " << r.streams << ", requests " << r.requests << ", grants " << r.grants
          << ", revocations " << r.revocations << " (" << secs << " s)\n"
          << "soundness violations " << r.soundness_violations << '\n'
          << "mediation mismatches " << r.mediation_mismatches << '\n'
          << "notification mismatches " << r.notification_mismatches << '\n'
          << "exclusivity violations " << r.exclusivity_violations << '\n';
      for (const auto& f : r.failures) err << f << '\n';
      return r.ok() ? kExitOk : kExitFailure;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const MalformedScenarioError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace audiomon::cli
