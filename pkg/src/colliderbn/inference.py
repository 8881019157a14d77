"""Exact inference by factor-based variable elimination, with a brute-force
joint-enumeration oracle used to verify it."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .core import Cpt, Evidence, Network, NetworkError, check_evidence

DEFAULT_JOINT_CAP = 2 ** 20

IMPOSSIBLE_EVIDENCE = "IMPOSSIBLE_EVIDENCE"
TARGET_IN_EVIDENCE = "TARGET_IN_EVIDENCE"
STATE_SPACE_TOO_LARGE = "STATE_SPACE_TOO_LARGE"


@dataclass(frozen=True)
class Factor:
    """A non-negative tensor over an ordered variable scope.

    ``values`` has one axis per scope variable, axes in scope order, sized by
    that variable's state count. Not necessarily normalized.
    """

    scope: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "scope", tuple(self.scope))
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != len(self.scope):
            raise ValueError(f"values rank {vals.ndim} does not match scope {self.scope}")
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class QueryResult:
    """Posterior over one target variable plus the prior probability of the evidence."""

    target: str
    distribution: dict[str, float]
    evidence_probability: float


def factor_from_cpt(network: Network, cpt: Cpt) -> Factor:
    """Encode a CPT as a factor over parents-then-child.

    The canonical row order (first parent slowest) makes the row matrix a
    flat view of the shaped tensor.
    """
    child = network.variable(cpt.child)
    shape = [len(network.variable(p).states) for p in cpt.parents] + [len(child.states)]
    values = np.array(cpt.rows, dtype=float).reshape(shape)
    return Factor(scope=tuple(cpt.parents) + (cpt.child,), values=values)


def factor_product(a: Factor, b: Factor) -> Factor:
    """Pointwise product; result scope is a's order followed by b's new variables."""
    for var in set(a.scope) & set(b.scope):
        if a.values.shape[a.scope.index(var)] != b.values.shape[b.scope.index(var)]:
            raise NetworkError(
                "STATE_SPACE_MISMATCH",
                f"shared variable {var!r} has different state counts in the two factors")
    out_scope = a.scope + tuple(v for v in b.scope if v not in a.scope)
    return Factor(out_scope, _aligned(a, out_scope) * _aligned(b, out_scope))


def _aligned(f: Factor, out_scope: tuple[str, ...]) -> np.ndarray:
    """Broadcast f.values into the axis layout of out_scope."""
    missing = [v for v in out_scope if v not in f.scope]
    expanded = f.values.reshape(f.values.shape + (1,) * len(missing))
    current = f.scope + tuple(missing)
    perm = [current.index(v) for v in out_scope]
    return np.transpose(expanded, perm)


def factor_marginalize(f: Factor, out: str) -> Factor:
    """Sum out one scope variable."""
    if out not in f.scope:
        raise NetworkError("NOT_IN_SCOPE", f"variable {out!r} is not in scope {f.scope}")
    axis = f.scope.index(out)
    return Factor(tuple(v for v in f.scope if v != out), f.values.sum(axis=axis))


def factor_reduce(f: Factor, network: Network, evidence: Evidence) -> Factor:
    """Slice the factor to the rows consistent with the evidence.

    Observed variables drop out of the scope; evidence on variables outside
    the scope leaves the factor unchanged.
    """
    check_evidence(network, evidence)
    scope = list(f.scope)
    values = f.values
    for var_id, state in evidence.items():
        if var_id not in scope:
            continue
        axis = scope.index(var_id)
        idx = network.variable(var_id).state_index(state)
        values = np.take(values, idx, axis=axis)
        scope.pop(axis)
    return Factor(tuple(scope), values)


def _moral_neighbors(network: Network) -> dict[str, set[str]]:
    """Undirected adjacency of the moralized graph."""
    neighbors: dict[str, set[str]] = {v.id: set() for v in network.variables}
    for parent, child in network.edges:
        neighbors[parent].add(child)
        neighbors[child].add(parent)
    for v in network.variables:
        parents = network.parents_of(v.id)
        for p, q in itertools.combinations(parents, 2):
            neighbors[p].add(q)
            neighbors[q].add(p)
    return neighbors


def elimination_order(network: Network, keep: set[str]) -> list[str]:
    """Min-fill elimination order over the moral graph.

    Greedy: repeatedly eliminate the variable (outside ``keep``) whose
    elimination adds the fewest fill-in edges, breaking ties by declaration
    order. Deterministic.
    """
    neighbors = _moral_neighbors(network)
    candidates = [v.id for v in network.variables if v.id not in keep]
    order: list[str] = []
    while candidates:
        best = min(candidates, key=lambda v: _fill_count(neighbors, v))
        order.append(best)
        for p, q in itertools.combinations(sorted(neighbors[best]), 2):
            neighbors[p].add(q)
            neighbors[q].add(p)
        for other in neighbors[best]:
            neighbors[other].discard(best)
        del neighbors[best]
        candidates.remove(best)
    return order


def _fill_count(neighbors: dict[str, set[str]], node: str) -> int:
    count = 0
    for p, q in itertools.combinations(neighbors[node], 2):
        if q not in neighbors[p]:
            count += 1
    return count


def query_posterior(network: Network, evidence: Evidence, target: str,
                    order: Sequence[str] | None = None) -> QueryResult:
    """P(target | evidence) by reduce-then-eliminate variable elimination.

    ``order`` overrides the min-fill elimination order (any permutation of
    the eliminable variables gives the same result; used for verification).
    """
    check_evidence(network, evidence)
    target_var = network.variable(target)
    if target in evidence:
        raise NetworkError(TARGET_IN_EVIDENCE, f"target {target!r} is fixed by the evidence")

    factors = [factor_reduce(factor_from_cpt(network, cpt), network, evidence)
               for cpt in network.cpts]
    keep = {target} | set(evidence)
    if order is None:
        order = elimination_order(network, keep)
    else:
        expected = {v.id for v in network.variables} - keep
        if set(order) != expected:
            raise NetworkError("BAD_ORDER", "order must cover exactly the eliminable variables")

    for var in order:
        involved = [f for f in factors if var in f.scope]
        if not involved:
            continue
        product = involved[0]
        for f in involved[1:]:
            product = factor_product(product, f)
        factors = [f for f in factors if var not in f.scope]
        factors.append(factor_marginalize(product, var))

    result = Factor((), np.array(1.0))
    for f in factors:
        result = factor_product(result, f)
    if result.scope != (target,):
        result = Factor((target,), _aligned(result, (target,)))

    unnormalized = result.values
    z = float(unnormalized.sum())
    if z <= 0.0:
        raise NetworkError(IMPOSSIBLE_EVIDENCE, "evidence has probability 0; no posterior exists")
    distribution = {s: float(p) for s, p in zip(target_var.states, unnormalized / z)}
    return QueryResult(target=target, distribution=distribution,
                       evidence_probability=1.0 if not evidence else z)


def prior_marginals(network: Network) -> dict[str, dict[str, float]]:
    """Marginal distribution of every variable with no evidence."""
    return {v.id: query_posterior(network, {}, v.id).distribution for v in network.variables}


def enumerate_joint(network: Network, evidence: Evidence, target: str,
                    cap: int = DEFAULT_JOINT_CAP) -> QueryResult:
    """Oracle with the same contract as query_posterior: sum the full joint
    product over every variable configuration. Independent of the factor code."""
    check_evidence(network, evidence)
    target_var = network.variable(target)
    if target in evidence:
        raise NetworkError(TARGET_IN_EVIDENCE, f"target {target!r} is fixed by the evidence")

    var_ids = network.variable_ids
    state_counts = [len(network.variable(v).states) for v in var_ids]
    total = 1
    for n in state_counts:
        total *= n
    if total > cap:
        raise NetworkError(STATE_SPACE_TOO_LARGE, f"{total} joint states exceeds cap {cap}")

    evidence_idx = {v: network.variable(v).state_index(s) for v, s in evidence.items()}
    position = {v: i for i, v in enumerate(var_ids)}
    target_pos = position[target]

    unnormalized = [0.0] * len(target_var.states)
    for assignment in itertools.product(*(range(n) for n in state_counts)):
        if any(assignment[position[v]] != idx for v, idx in evidence_idx.items()):
            continue
        p = 1.0
        for cpt in network.cpts:
            row_index = 0
            for parent in cpt.parents:
                row_index = row_index * len(network.variable(parent).states) + assignment[position[parent]]
            p *= cpt.rows[row_index][assignment[position[cpt.child]]]
        unnormalized[assignment[target_pos]] += p

    z = sum(unnormalized)
    if z <= 0.0:
        raise NetworkError(IMPOSSIBLE_EVIDENCE, "evidence has probability 0; no posterior exists")
    distribution = {s: p / z for s, p in zip(target_var.states, unnormalized)}
    return QueryResult(target=target, distribution=distribution,
                       evidence_probability=1.0 if not evidence else z)
