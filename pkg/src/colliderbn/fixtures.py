"""Write the bundled model fixtures to disk in the JSON model format.

The stress and contact fixtures carry a metadata block recording their
calibrated constants and the endpoints those constants achieve.
"""

from __future__ import annotations

import json
from pathlib import Path

from .model_io import serialize_model
from .models import (CONTACT_ACHIEVED, CONTACT_CONSTANTS, FIXTURE_BUILDERS,
                     STRESS_ACHIEVED, STRESS_CONSTANTS)

_METADATA = {
    "stress": {"calibrated_constants": STRESS_CONSTANTS, "achieved": STRESS_ACHIEVED},
    "contact": {"calibrated_constants": CONTACT_CONSTANTS, "achieved": CONTACT_ACHIEVED},
}


def write_fixtures(directory: str | Path) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    for name, builder in FIXTURE_BUILDERS.items():
        payload = serialize_model(builder())
        if name in _METADATA:
            doc = json.loads(payload)
            doc["metadata"] = _METADATA[name]
            payload = (json.dumps(doc, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
        path = directory / f"{name}.json"
        path.write_bytes(payload)
        written.append(path)
    return written


if __name__ == "__main__":
    import sys

    target = sys.argv[1] if len(sys.argv) > 1 else "models"
    for path in write_fixtures(target):
        print(path)
