"""Record API responses used by the frontend end-to-end tests.

One-off helper: re-run after changing the bundled models or the server
to refresh frontend/tests/fixtures/*.json with live responses.

    python3 scripts/record_ui_fixtures.py
"""

import json
from pathlib import Path

from fastapi.testclient import TestClient

from colliderbn.server import create_app

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "frontend" / "tests" / "fixtures"

REQUESTS = {
    "models": ("GET", "/api/models", None),
    "simple_prior": ("POST", "/api/models/simple-smoking/query", {}),
    "simple_tested": ("POST", "/api/models/simple-smoking/query",
                      {"evidence": {"tested": "true"}}),
    "simple_tested_smoker": ("POST", "/api/models/simple-smoking/query",
                             {"evidence": {"tested": "true", "smoker": "true"}}),
    "simple_tested_nonsmoker": ("POST", "/api/models/simple-smoking/query",
                                {"evidence": {"tested": "true", "smoker": "false"}}),
    "stress_tested_stress": ("POST", "/api/models/stress/query",
                             {"evidence": {"tested": "true", "stress": "true"}}),
    "stress_tested_nostress": ("POST", "/api/models/stress/query",
                               {"evidence": {"tested": "true", "stress": "false"}}),
    "stress_do_stress": ("POST", "/api/models/stress/query",
                         {"do": {"stress": "true"}}),
    "stress_do_nostress": ("POST", "/api/models/stress/query",
                           {"do": {"stress": "false"}}),
}


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    client = TestClient(create_app(models_dir=ROOT / "models"))
    manifest = {}
    for name, (method, url, body) in REQUESTS.items():
        response = (client.get(url) if method == "GET"
                    else client.post(url, json=body))
        response.raise_for_status()
        (OUT / f"{name}.json").write_text(
            json.dumps(response.json(), indent=2, sort_keys=True) + "\n")
        manifest[name] = {"method": method, "url": url, "body": body}
    (OUT / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    print(f"wrote {len(REQUESTS)} fixtures to {OUT}")


if __name__ == "__main__":
    main()
