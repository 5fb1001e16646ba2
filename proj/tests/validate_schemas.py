#!/usr/bin/env python3
# Copyright 2026 The audiomon Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Validate the scenario corpus, goldens and CLI output against the schemas."""

import json
import pathlib
import subprocess
import sys

from jsonschema import Draft202012Validator

MODES = ["base", "isolation", "mls", "approval", "resolver1", "resolver2", "full"]


def validator(schema):
    Draft202012Validator.check_schema(schema)
    return Draft202012Validator(schema)


def check(v, doc, what, errors):
    for e in v.iter_errors(doc):
        errors.append(f"{what}: {'/'.join(map(str, e.path))}: {e.message}")


def cli(tool, *args):
    res = subprocess.run([tool, *args], capture_output=True, text=True)
    if res.returncode not in (0, 1):
        raise SystemExit(f"{' '.join(args)} exited {res.returncode}: {res.stderr}")
    return res.stdout


def main():
    tool, corpus = sys.argv[1], pathlib.Path(sys.argv[2])
    schemas = corpus / "schema"
    report = json.loads((schemas / "report.schema.json").read_text())
    scenario_v = validator(json.loads((schemas / "scenario.schema.json").read_text()))
    grid_v = validator(json.loads((schemas / "grid.schema.json").read_text()))
    report_v = validator(report)
    audit_v = validator({"$defs": report["$defs"], "$ref": "#/$defs/audit_record"})

    errors = []
    files = sorted(corpus.glob("attacks/*.json")) + sorted(corpus.glob("apps/*.json"))
    for path in files:
        check(scenario_v, json.loads(path.read_text()), path.name, errors)
        for mode in MODES:
            out = cli(tool, "run", str(path), "--mode", mode, "--format", "json")
            check(report_v, json.loads(out), f"run {path.name} {mode}", errors)
        for line in cli(tool, "audit", str(path)).splitlines():
            check(audit_v, json.loads(line), f"audit {path.name}", errors)
    for golden in sorted(corpus.glob("golden/*.json")):
        check(grid_v, json.loads(golden.read_text()), golden.name, errors)
    for table in ("--attacks", "--apps"):
        check(grid_v, json.loads(cli(tool, "matrix", table, "--format", "json")),
              f"matrix {table}", errors)

    for e in errors[:20]:
        print(e)
    print(f"{len(files)} scenarios checked, {len(errors)} schema errors")
    return 1 if errors else 0


if __name__ == "__main__":
    sys.exit(main())
