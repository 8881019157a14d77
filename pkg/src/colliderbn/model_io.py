"""Model and scenario file parsing/serialization, plus CPT estimation from
tabular records.

Both file formats are UTF-8 JSON. Parsing goes through a small
position-tracking JSON reader so every diagnostic (syntax or structural) can
point at a line and column.
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass, field
from json.decoder import scanstring
from typing import Any, Sequence

from .causal import Intervention
from .core import (Cpt, DiscreteVariable, Network, NetworkError,
                   parent_configurations, validate_network)

FORMAT_VERSION = 1

SYNTAX = "SYNTAX"
UNKNOWN_VARIABLE = "UNKNOWN_VARIABLE"
BAD_ROW_LENGTH = "BAD_ROW_LENGTH"
DUPLICATE_ASSIGNMENT = "DUPLICATE_ASSIGNMENT"
EMPTY_CONFIGURATION = "EMPTY_CONFIGURATION"

_NUMBER_RE = re.compile(r"-?(?:0|[1-9]\d*)(?:\.\d+)?(?:[eE][-+]?\d+)?")


class ParseError(Exception):
    """Positioned diagnostic; parsing never partially succeeds."""

    def __init__(self, code: str, message: str, line: int, column: int):
        super().__init__(f"{code} at line {line}, column {column}: {message}")
        self.code = code
        self.message = message
        self.line = line
        self.column = column


Path = tuple[Any, ...]


class _Reader:
    """Recursive-descent JSON reader that records the (line, column) of every
    value, keyed by its path from the document root."""

    def __init__(self, text: str):
        self.text = text
        self.i = 0
        self.positions: dict[Path, tuple[int, int]] = {}

    def position(self, index: int | None = None) -> tuple[int, int]:
        index = self.i if index is None else index
        line = self.text.count("\n", 0, index) + 1
        column = index - (self.text.rfind("\n", 0, index) + 1) + 1
        return line, column

    def fail(self, message: str, index: int | None = None):
        line, column = self.position(index)
        raise ParseError(SYNTAX, message, line, column)

    def skip_ws(self):
        while self.i < len(self.text) and self.text[self.i] in " \t\n\r":
            self.i += 1

    def parse_document(self) -> Any:
        self.skip_ws()
        if self.i >= len(self.text):
            self.fail("empty input")
        value = self.parse_value(())
        self.skip_ws()
        if self.i < len(self.text):
            self.fail("trailing content after document")
        return value

    def parse_value(self, path: Path) -> Any:
        self.skip_ws()
        if self.i >= len(self.text):
            self.fail("unexpected end of input")
        self.positions[path] = self.position()
        ch = self.text[self.i]
        if ch == "{":
            return self.parse_object(path)
        if ch == "[":
            return self.parse_array(path)
        if ch == '"':
            try:
                value, self.i = scanstring(self.text, self.i + 1)
            except ValueError:
                self.fail("malformed string")
            return value
        for literal, value in (("true", True), ("false", False), ("null", None)):
            if self.text.startswith(literal, self.i):
                self.i += len(literal)
                return value
        m = _NUMBER_RE.match(self.text, self.i)
        if m:
            token = m.group()
            self.i = m.end()
            return int(token) if re.fullmatch(r"-?\d+", token) else float(token)
        self.fail(f"unexpected character {ch!r}")

    def parse_object(self, path: Path) -> dict:
        self.i += 1  # consume '{'
        out: dict[str, Any] = {}
        self.skip_ws()
        if self.i < len(self.text) and self.text[self.i] == "}":
            self.i += 1
            return out
        while True:
            self.skip_ws()
            if self.i >= len(self.text) or self.text[self.i] != '"':
                self.fail("expected object key")
            key_pos = self.i
            try:
                key, self.i = scanstring(self.text, self.i + 1)
            except ValueError:
                self.fail("malformed string")
            if key in out:
                self.fail(f"duplicate key {key!r}", key_pos)
            self.skip_ws()
            if self.i >= len(self.text) or self.text[self.i] != ":":
                self.fail("expected ':' after object key")
            self.i += 1
            out[key] = self.parse_value(path + (key,))
            self.skip_ws()
            if self.i < len(self.text) and self.text[self.i] == ",":
                self.i += 1
                continue
            if self.i < len(self.text) and self.text[self.i] == "}":
                self.i += 1
                return out
            self.fail("expected ',' or '}' in object")

    def parse_array(self, path: Path) -> list:
        self.i += 1  # consume '['
        out: list[Any] = []
        self.skip_ws()
        if self.i < len(self.text) and self.text[self.i] == "]":
            self.i += 1
            return out
        while True:
            out.append(self.parse_value(path + (len(out),)))
            self.skip_ws()
            if self.i < len(self.text) and self.text[self.i] == ",":
                self.i += 1
                continue
            if self.i < len(self.text) and self.text[self.i] == "]":
                self.i += 1
                return out
            self.fail("expected ',' or ']' in array")


def _decode(text: bytes | str) -> tuple[Any, _Reader]:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(SYNTAX, f"invalid UTF-8: {exc.reason}", 1, 1) from None
    reader = _Reader(text)
    return reader.parse_document(), reader


class _Shape:
    """Structural checks against a decoded document, failing with the
    position of the offending element."""

    def __init__(self, reader: _Reader):
        self.reader = reader

    def fail(self, code: str, message: str, path: Path):
        while path and path not in self.reader.positions:
            path = path[:-1]
        line, column = self.reader.positions.get(path, (1, 1))
        raise ParseError(code, message, line, column)

    def require(self, doc: Any, path: Path, key: str, kind: type, kind_name: str) -> Any:
        if not isinstance(doc, dict):
            self.fail(SYNTAX, "expected a JSON object", path)
        if key not in doc:
            self.fail(SYNTAX, f"missing required key {key!r}", path)
        value = doc[key]
        if not isinstance(value, kind) or isinstance(value, bool):
            self.fail(SYNTAX, f"{key!r} must be a {kind_name}", path + (key,))
        return value

    def expect(self, value: Any, path: Path, kind: type, kind_name: str) -> Any:
        if not isinstance(value, kind) or isinstance(value, bool):
            self.fail(SYNTAX, f"expected a {kind_name}", path)
        return value


def parse_model(text: bytes | str) -> Network:
    """Parse and validate a model document; any failure is a positioned
    ParseError and never yields a partially-built network."""
    doc, reader = _decode(text)
    shape = _Shape(reader)

    version = shape.require(doc, (), "format_version", int, "integer")
    if version != FORMAT_VERSION:
        shape.fail(SYNTAX, f"unsupported format_version {version}", ("format_version",))
    name = shape.require(doc, (), "name", str, "string")

    raw_vars = shape.require(doc, (), "variables", list, "array")
    variables: list[DiscreteVariable] = []
    for i, item in enumerate(raw_vars):
        path = ("variables", i)
        var_id = shape.require(item, path, "id", str, "string")
        label = shape.require(item, path, "label", str, "string")
        states = shape.require(item, path, "states", list, "array")
        for j, s in enumerate(states):
            shape.expect(s, path + ("states", j), str, "string")
        variables.append(DiscreteVariable(id=var_id, label=label, states=tuple(states)))
    declared = {v.id for v in variables}

    raw_edges = shape.require(doc, (), "edges", list, "array")
    edges: list[tuple[str, str]] = []
    for i, item in enumerate(raw_edges):
        path = ("edges", i)
        pair = shape.expect(item, path, list, "array")
        if len(pair) != 2:
            shape.fail(SYNTAX, "edge must be a [parent, child] pair", path)
        parent = shape.expect(pair[0], path + (0,), str, "string")
        child = shape.expect(pair[1], path + (1,), str, "string")
        for end, sub in ((parent, 0), (child, 1)):
            if end not in declared:
                shape.fail(UNKNOWN_VARIABLE, f"edge references undeclared variable {end!r}",
                           path + (sub,))
        edges.append((parent, child))

    raw_cpts = shape.require(doc, (), "cpts", list, "array")
    cpts: list[Cpt] = []
    by_id = {v.id: v for v in variables}
    for i, item in enumerate(raw_cpts):
        path = ("cpts", i)
        child = shape.require(item, path, "child", str, "string")
        if child not in declared:
            shape.fail(UNKNOWN_VARIABLE, f"CPT for undeclared variable {child!r}", path + ("child",))
        parents = shape.require(item, path, "parents", list, "array")
        for j, p in enumerate(parents):
            shape.expect(p, path + ("parents", j), str, "string")
            if p not in declared:
                shape.fail(UNKNOWN_VARIABLE, f"CPT parent {p!r} is undeclared",
                           path + ("parents", j))
        rows = shape.require(item, path, "rows", list, "array")
        expected_rows = 1
        for p in parents:
            expected_rows *= len(by_id[p].states)
        if len(rows) != expected_rows:
            shape.fail(BAD_ROW_LENGTH,
                       f"CPT for {child!r} needs {expected_rows} rows, found {len(rows)}",
                       path + ("rows",))
        parsed_rows: list[tuple[float, ...]] = []
        for j, row in enumerate(rows):
            shape.expect(row, path + ("rows", j), list, "array")
            if len(row) != len(by_id[child].states):
                shape.fail(BAD_ROW_LENGTH,
                           f"row {j} of CPT for {child!r} needs {len(by_id[child].states)} "
                           f"entries, found {len(row)}",
                           path + ("rows", j))
            for k, p in enumerate(row):
                if not isinstance(p, (int, float)) or isinstance(p, bool):
                    shape.fail(SYNTAX, "probability must be a number", path + ("rows", j, k))
            parsed_rows.append(tuple(float(p) for p in row))
        cpts.append(Cpt(child=child, parents=tuple(parents), rows=tuple(parsed_rows)))

    network = Network(name=name, variables=variables, edges=edges, cpts=cpts)
    report = validate_network(network)
    if not report.ok:
        first = report.violations[0]
        path = _violation_path(first.location, cpts)
        shape.fail(first.code, first.message, path)
    return network


def _violation_path(location: str, cpts: Sequence[Cpt]) -> Path:
    """Best-effort mapping from a validation location to a document path."""
    m = re.fullmatch(r"(\S+)\[(\d+)\]", location)
    child, row = (m.group(1), int(m.group(2))) if m else (location, None)
    for i, cpt in enumerate(cpts):
        if cpt.child == child:
            if row is None:
                return ("cpts", i)
            return ("cpts", i, "rows", row)
    return ()


def serialize_model(network: Network) -> bytes:
    """Canonical UTF-8 JSON rendering: variables in declaration order, CPT
    rows in canonical order, probabilities at up to 12 significant digits.
    Byte-identical across runs for equal networks."""
    doc = {
        "format_version": FORMAT_VERSION,
        "name": network.name,
        "variables": [
            {"id": v.id, "label": v.label, "states": list(v.states)}
            for v in network.variables
        ],
        "edges": sorted([p, c] for (p, c) in network.edges),
        "cpts": [
            {
                "child": v.id,
                "parents": list(network.cpt(v.id).parents),
                "rows": [[_round12(p) for p in row] for row in network.cpt(v.id).rows],
            }
            for v in network.variables
        ],
    }
    return (json.dumps(doc, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def _round12(p: float) -> float:
    return float(f"{p:.12g}")


@dataclass(frozen=True)
class Scenario:
    """One named run: a model reference, evidence, interventions, queries."""

    model: str
    label: str
    evidence: dict[str, str]
    interventions: tuple[Intervention, ...]
    queries: tuple[tuple[str, str | None], ...]


def parse_scenario(text: bytes | str) -> Scenario:
    """Parse a scenario document. Cross-validation against the referenced
    model happens at execution time, not here."""
    doc, reader = _decode(text)
    shape = _Shape(reader)

    version = shape.require(doc, (), "format_version", int, "integer")
    if version != FORMAT_VERSION:
        shape.fail(SYNTAX, f"unsupported format_version {version}", ("format_version",))
    model = shape.require(doc, (), "model", str, "string")
    label = doc.get("label", "")
    if not isinstance(label, str):
        shape.fail(SYNTAX, "'label' must be a string", ("label",))

    evidence_raw = doc.get("evidence", {})
    shape.expect(evidence_raw, ("evidence",), dict, "object")
    evidence: dict[str, str] = {}
    for var, state in evidence_raw.items():
        shape.expect(state, ("evidence", var), str, "string")
        evidence[var] = state

    do_raw = doc.get("do", {})
    shape.expect(do_raw, ("do",), dict, "object")
    interventions: list[Intervention] = []
    for var, state in do_raw.items():
        shape.expect(state, ("do", var), str, "string")
        if var in evidence:
            shape.fail(DUPLICATE_ASSIGNMENT,
                       f"variable {var!r} appears in both evidence and do", ("do", var))
        interventions.append(Intervention(variable=var, state=state))

    queries_raw = doc.get("queries", [])
    shape.expect(queries_raw, ("queries",), list, "array")
    queries: list[tuple[str, str | None]] = []
    for i, item in enumerate(queries_raw):
        path = ("queries", i)
        target = shape.require(item, path, "target", str, "string")
        state = item.get("state")
        if state is not None and not isinstance(state, str):
            shape.fail(SYNTAX, "'state' must be a string", path + ("state",))
        queries.append((target, state))

    return Scenario(model=model, label=label, evidence=evidence,
                    interventions=tuple(interventions), queries=tuple(queries))


@dataclass(frozen=True)
class RecordTable:
    """Tabular observations: one column per variable, cells are state names,
    optional per-row multiplicity."""

    columns: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]
    counts: tuple[int, ...] | None = None


def read_records(text: bytes | str) -> RecordTable:
    """Read an RFC-4180 CSV with a header of variable ids; a trailing integer
    column named 'count' gives row multiplicities."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    rows = list(csv.reader(io.StringIO(text)))
    rows = [r for r in rows if r]
    if not rows:
        raise ParseError(SYNTAX, "empty record table", 1, 1)
    header = rows[0]
    has_count = bool(header) and header[-1] == "count"
    columns = tuple(header[:-1] if has_count else header)
    data: list[tuple[str, ...]] = []
    counts: list[int] = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise ParseError(SYNTAX,
                             f"expected {len(header)} fields, found {len(row)}", lineno, 1)
        if has_count:
            try:
                counts.append(int(row[-1]))
            except ValueError:
                raise ParseError(SYNTAX, f"count is not an integer: {row[-1]!r}",
                                 lineno, len(row)) from None
            data.append(tuple(row[:-1]))
        else:
            data.append(tuple(row))
    return RecordTable(columns=columns, rows=tuple(data),
                       counts=tuple(counts) if has_count else None)


def cpt_from_counts(network: Network, records: RecordTable, child: str,
                    parents: Sequence[str], smoothing: float = 0.0) -> Cpt:
    """Estimate a CPT by (smoothed) maximum likelihood from record counts.

    Each row is (count + smoothing) / (total + smoothing * state_count).
    A parent configuration with no records is an error unless smoothing > 0,
    in which case it becomes uniform.
    """
    if smoothing < 0:
        raise NetworkError("BAD_SMOOTHING", "smoothing must be non-negative")
    child_var = network.variable(child)
    parents = tuple(parents)
    for col in (child,) + parents:
        if col not in records.columns:
            raise NetworkError("MISSING_COLUMN", f"record table has no column {col!r}")

    col_index = {c: i for i, c in enumerate(records.columns)}
    counts = records.counts if records.counts is not None else (1,) * len(records.rows)
    # counts[config][child_state]
    tally: dict[tuple[int, ...], list[float]] = {
        config: [0.0] * len(child_var.states)
        for config in parent_configurations(network, parents)
    }
    for row, weight in zip(records.rows, counts):
        config = tuple(network.variable(p).state_index(row[col_index[p]]) for p in parents)
        child_idx = child_var.state_index(row[col_index[child]])
        tally[config][child_idx] += weight

    rows: list[tuple[float, ...]] = []
    for config in parent_configurations(network, parents):
        cell = tally[config]
        total = sum(cell)
        if total == 0 and smoothing == 0:
            raise NetworkError(EMPTY_CONFIGURATION,
                               f"no records for parent configuration {config} of {child!r} "
                               "and smoothing is 0")
        denom = total + smoothing * len(child_var.states)
        rows.append(tuple((c + smoothing) / denom for c in cell))
    return Cpt(child=child, parents=parents, rows=tuple(rows))
