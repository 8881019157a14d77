"""
Model files: parsing, canonical serialization, diagnostics
==========================================================

Networks round-trip through a small JSON format.  The parser tracks
positions, so every error carries a line and column; serialization is
canonical, so identical networks produce identical bytes.
"""

from pathlib import Path

from colliderbn import ParseError, parse_model, serialize_model

models = Path(__file__).resolve().parent.parent / "models"

network = parse_model((models / "stress.json").read_bytes())
print("loaded:", network.name)
print("variables:", ", ".join(network.variable_ids))

payload = serialize_model(network)
assert parse_model(payload) == network
assert serialize_model(parse_model(payload)) == payload
print("round-trip: identical bytes,", len(payload), "of them")

# positioned diagnostics for broken input
try:
    parse_model(b'{\n  "format_version": 1,\n  "name": oops\n}')
except ParseError as exc:
    print(f"parse error {exc.code} at line {exc.line}, column {exc.column}: "
          f"{exc.message}")
