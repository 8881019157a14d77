"""
Scenario files, the command line, and the HTTP API
==================================================

Everything in the previous demos is also reachable without writing
Python: scenario JSON files bundle a model reference with evidence,
interventions, and queries, and the `colliderbn` command line and the
API server expose the same engine.
"""

import io
import json

from colliderbn import parse_scenario
from colliderbn.cli import run_cli

scenario = parse_scenario(json.dumps({
    "format_version": 1,
    "model": "models/stress.json",
    "label": "break the link",
    "do": {"stress": "true"},
    "queries": [{"target": "covid19"}],
}))
print("scenario:", scenario.label)
print("  interventions:", [(iv.variable, iv.state) for iv in scenario.interventions])

# the CLI is a thin wrapper over the library; run it in-process here
out, err = io.StringIO(), io.StringIO()
code = run_cli(["query", "models/simple-smoking.json",
                "--target", "covid19",
                "--evidence", "tested=true", "--evidence", "smoker=true"],
               out, err)
print(f"\n$ colliderbn query models/simple-smoking.json --target covid19 "
      f"--evidence tested=true --evidence smoker=true   (exit {code})")
print(out.getvalue())

print("the API server offers the same queries over HTTP:")
print("  colliderbn serve --port 8000")
print("  POST /api/models/simple-smoking/query "
      '{"evidence": {"tested": "true"}, "targets": ["smoker"]}')
