"""Immutable discrete Bayesian network model: variables, CPTs, structure, validation."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

ROW_SUM_TOL = 1e-9

# Reason codes reported by validate_network.
CYCLE = "CYCLE"
ORPHAN_EDGE = "ORPHAN_EDGE"
CPT_PARENT_MISMATCH = "CPT_PARENT_MISMATCH"
ROW_NOT_NORMALIZED = "ROW_NOT_NORMALIZED"
BAD_PROBABILITY = "BAD_PROBABILITY"
BAD_VARIABLE = "BAD_VARIABLE"
DUPLICATE_VARIABLE = "DUPLICATE_VARIABLE"
MISSING_CPT = "MISSING_CPT"
DUPLICATE_CPT = "DUPLICATE_CPT"
BAD_ROW_COUNT = "BAD_ROW_COUNT"


class NetworkError(Exception):
    """Domain error carrying a machine-readable reason code."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


@dataclass(frozen=True)
class DiscreteVariable:
    """A named discrete variable with a fixed, ordered state space.

    CPT columns are keyed by the state order, so ``states`` must never be
    reordered after construction.
    """

    id: str
    label: str
    states: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))

    def state_index(self, state: str) -> int:
        try:
            return self.states.index(state)
        except ValueError:
            raise NetworkError(
                "UNKNOWN_STATE",
                f"variable {self.id!r} has no state {state!r} (states: {list(self.states)})",
            ) from None


@dataclass(frozen=True)
class Cpt:
    """Conditional probability table for one child variable.

    ``rows`` holds one probability vector over the child's states per parent
    configuration. Configurations are enumerated row-major over parent state
    indices with the first parent varying slowest.
    """

    child: str
    parents: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "parents", tuple(self.parents))
        object.__setattr__(self, "rows", tuple(tuple(float(p) for p in row) for row in self.rows))


def point_mass_cpt(variable: DiscreteVariable, state: str) -> Cpt:
    """A parentless CPT putting all mass on one state of ``variable``."""
    idx = variable.state_index(state)
    row = tuple(1.0 if i == idx else 0.0 for i in range(len(variable.states)))
    return Cpt(child=variable.id, parents=(), rows=(row,))


class Network:
    """An immutable DAG of discrete variables with one CPT each.

    Construction is permissive: structurally broken candidates can be built
    and then inspected with :func:`validate_network`. All inference code
    assumes a network that validates cleanly.
    """

    def __init__(self, name: str, variables: Sequence[DiscreteVariable],
                 edges: Iterable[tuple[str, str]], cpts: Sequence[Cpt]):
        self.name = name
        self.variables = tuple(variables)
        self.edges = frozenset((str(p), str(c)) for p, c in edges)
        self.cpts = tuple(cpts)
        self._by_id = {v.id: v for v in self.variables}
        self._cpt_by_child: dict[str, Cpt] = {}
        for cpt in self.cpts:
            self._cpt_by_child.setdefault(cpt.child, cpt)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Network):
            return NotImplemented
        return (self.name == other.name
                and self.variables == other.variables
                and self.edges == other.edges
                and self._cpt_by_child == other._cpt_by_child)

    def __repr__(self) -> str:
        return f"Network({self.name!r}, {len(self.variables)} variables, {len(self.edges)} edges)"

    @property
    def variable_ids(self) -> tuple[str, ...]:
        return tuple(v.id for v in self.variables)

    def variable(self, var_id: str) -> DiscreteVariable:
        try:
            return self._by_id[var_id]
        except KeyError:
            raise NetworkError("UNKNOWN_VARIABLE", f"unknown variable {var_id!r}") from None

    def has_variable(self, var_id: str) -> bool:
        return var_id in self._by_id

    def cpt(self, var_id: str) -> Cpt:
        self.variable(var_id)
        return self._cpt_by_child[var_id]

    def parents_of(self, var_id: str) -> tuple[str, ...]:
        """Graph parents in CPT order (the CPT fixes the order)."""
        return self._cpt_by_child[var_id].parents

    def children_of(self, var_id: str) -> tuple[str, ...]:
        return tuple(v.id for v in self.variables if (var_id, v.id) in self.edges)


# Evidence is a plain mapping from variable id to observed state name; a dict
# already guarantees each variable appears once.
Evidence = Mapping[str, str]


def check_evidence(network: Network, evidence: Evidence) -> None:
    """Raise NetworkError if any evidence variable or state is undeclared."""
    for var_id, state in evidence.items():
        network.variable(var_id).state_index(state)


@dataclass(frozen=True)
class Violation:
    code: str
    location: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_network(network: Network) -> ValidationReport:
    """Check every structural invariant; violations are returned, not raised."""
    violations: list[Violation] = []

    seen_ids: set[str] = set()
    for v in network.variables:
        if not v.id or any(ch.isspace() for ch in v.id):
            violations.append(Violation(BAD_VARIABLE, v.id, "variable id must be a non-empty token without whitespace"))
        if v.id in seen_ids:
            violations.append(Violation(DUPLICATE_VARIABLE, v.id, "variable id declared more than once"))
        seen_ids.add(v.id)
        if len(v.states) < 2:
            violations.append(Violation(BAD_VARIABLE, v.id, "variable needs at least 2 states"))
        if len(set(v.states)) != len(v.states):
            violations.append(Violation(BAD_VARIABLE, v.id, "state names must be unique within a variable"))

    declared = {v.id for v in network.variables}
    for parent, child in sorted(network.edges):
        if parent not in declared or child not in declared:
            violations.append(Violation(ORPHAN_EDGE, f"{parent}->{child}", "edge endpoint is not a declared variable"))

    # Cycle check over edges with declared endpoints only.
    adjacency = {v: [] for v in declared}
    for parent, child in network.edges:
        if parent in declared and child in declared:
            adjacency[parent].append(child)
    state: dict[str, int] = {}  # 0 visiting, 1 done

    def has_cycle(node: str) -> bool:
        state[node] = 0
        for nxt in adjacency[node]:
            if state.get(nxt) == 0:
                return True
            if nxt not in state and has_cycle(nxt):
                return True
        state[node] = 1
        return False

    for v in declared:
        if v not in state and has_cycle(v):
            violations.append(Violation(CYCLE, v, "graph contains a directed cycle"))
            break

    # CPT coverage and contents.
    children_with_cpt: set[str] = set()
    for cpt in network.cpts:
        if cpt.child in children_with_cpt:
            violations.append(Violation(DUPLICATE_CPT, cpt.child, "more than one CPT for this variable"))
            continue
        children_with_cpt.add(cpt.child)
        if cpt.child not in declared:
            violations.append(Violation(ORPHAN_EDGE, cpt.child, "CPT child is not a declared variable"))
            continue
        graph_parents = {p for (p, c) in network.edges if c == cpt.child}
        if set(cpt.parents) != graph_parents or len(set(cpt.parents)) != len(cpt.parents):
            violations.append(Violation(
                CPT_PARENT_MISMATCH, cpt.child,
                f"CPT parents {list(cpt.parents)} do not match graph parents {sorted(graph_parents)}"))
            continue
        if any(p not in declared for p in cpt.parents):
            continue
        child_var = network._by_id[cpt.child]
        expected_rows = 1
        for p in cpt.parents:
            expected_rows *= len(network._by_id[p].states)
        if len(cpt.rows) != expected_rows:
            violations.append(Violation(
                BAD_ROW_COUNT, cpt.child,
                f"expected {expected_rows} rows, found {len(cpt.rows)}"))
            continue
        for i, row in enumerate(cpt.rows):
            if len(row) != len(child_var.states):
                violations.append(Violation(
                    BAD_ROW_COUNT, f"{cpt.child}[{i}]",
                    f"row has {len(row)} entries for {len(child_var.states)} states"))
                continue
            if any(p < 0.0 or p > 1.0 for p in row):
                violations.append(Violation(
                    BAD_PROBABILITY, f"{cpt.child}[{i}]", "probability outside [0, 1]"))
            elif abs(sum(row) - 1.0) > ROW_SUM_TOL:
                violations.append(Violation(
                    ROW_NOT_NORMALIZED, f"{cpt.child}[{i}]", f"row sums to {sum(row)!r}"))

    for v in network.variables:
        if v.id not in children_with_cpt:
            violations.append(Violation(MISSING_CPT, v.id, "variable has no CPT"))

    return ValidationReport(tuple(violations))


def topological_order(network: Network) -> list[str]:
    """Variable ids with every parent before its children.

    Deterministic: among ready variables the one declared first is emitted
    first. Raises on cyclic input.
    """
    remaining_parents = {v.id: set(p for (p, c) in network.edges if c == v.id) for v in network.variables}
    order: list[str] = []
    emitted: set[str] = set()
    while len(order) < len(network.variables):
        ready = [v.id for v in network.variables
                 if v.id not in emitted and remaining_parents[v.id] <= emitted]
        if not ready:
            raise NetworkError(CYCLE, "graph contains a directed cycle")
        nxt = ready[0]
        order.append(nxt)
        emitted.add(nxt)
    return order


def parent_configurations(network: Network, parents: Sequence[str]) -> list[tuple[int, ...]]:
    """Parent state-index tuples in canonical row order (first parent slowest)."""
    ranges = [range(len(network.variable(p).states)) for p in parents]
    return list(itertools.product(*ranges))
