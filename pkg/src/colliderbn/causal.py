"""Graph surgery (do-operator), d-separation, path classification, and the
selection-bias audit."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .core import Cpt, Evidence, Network, NetworkError, point_mass_cpt
from .inference import QueryResult, query_posterior

CHAIN = "CHAIN"
FORK = "FORK"
COLLIDER = "COLLIDER"

PATH_LIMIT = "PATH_LIMIT"
MAX_SIMPLE_PATHS = 10_000


@dataclass(frozen=True)
class Intervention:
    """Fix one variable to one state by graph surgery."""

    variable: str
    state: str


@dataclass(frozen=True)
class PathReport:
    """One simple undirected path between exposure and outcome.

    ``directions[i]`` is "->" when the edge points from nodes[i] to
    nodes[i+1] and "<-" otherwise. ``node_roles`` labels each interior node
    by its local arrow pattern; ``open_given`` says whether the path
    d-connects its endpoints under the conditioning set it was computed for.
    """

    nodes: tuple[str, ...]
    directions: tuple[str, ...]
    node_roles: tuple[str, ...]
    open_given: bool

    def tokens(self) -> tuple[str, ...]:
        """Alternating variable ids and edge direction arrows."""
        out: list[str] = [self.nodes[0]]
        for d, n in zip(self.directions, self.nodes[1:]):
            out.append(d)
            out.append(n)
        return tuple(out)


@dataclass(frozen=True)
class BiasAuditReport:
    """Observational-conditioned vs population vs interventional contrasts.

    Contrasts are risk differences P(outcome_state | e1, ...) minus the same
    for e0. ``reversal`` flags strict sign opposition between the
    selection-conditioned and interventional contrasts.
    """

    exposure: str
    outcome: str
    exposure_states: tuple[str, str]
    outcome_state: str
    selection: dict[str, str]
    selected_contrast: float
    population_contrast: float
    interventional_contrast: float
    paths_unconditioned: tuple[PathReport, ...]
    paths_selected: tuple[PathReport, ...]
    reversal: bool


def apply_do(network: Network, intervention: Intervention) -> Network:
    """Return the mutilated network for do(variable=state).

    All incoming edges to the intervened variable are removed and its CPT is
    replaced by a point mass; everything else is untouched.
    """
    var = network.variable(intervention.variable)
    var.state_index(intervention.state)
    new_edges = {(p, c) for (p, c) in network.edges if c != var.id}
    new_cpts = tuple(point_mass_cpt(var, intervention.state) if cpt.child == var.id else cpt
                     for cpt in network.cpts)
    return Network(name=network.name, variables=network.variables,
                   edges=new_edges, cpts=new_cpts)


def interventional_query(network: Network, intervention: Intervention,
                         evidence: Evidence, target: str) -> QueryResult:
    """P(target | evidence, do(intervention)) on the mutilated network."""
    if intervention.variable in evidence:
        raise NetworkError("DUPLICATE_ASSIGNMENT",
                           f"{intervention.variable!r} is both intervened and observed")
    if intervention.variable == target:
        raise NetworkError("TARGET_IN_EVIDENCE",
                           f"target {target!r} is fixed by the intervention")
    return query_posterior(apply_do(network, intervention), evidence, target)


def _descendants(network: Network, var_id: str) -> set[str]:
    out: set[str] = set()
    stack = [var_id]
    while stack:
        node = stack.pop()
        for child in network.children_of(node):
            if child not in out:
                out.add(child)
                stack.append(child)
    return out


def d_separated(network: Network, x: str, y: str, given: Iterable[str]) -> bool:
    """Decide x ⟂ y | given by reachability over active trails.

    A chain or fork node passes the trail unless conditioned on; a collider
    passes only if it or one of its descendants is conditioned on. Runs the
    standard ball-bouncing search from x; true iff y is unreachable.
    """
    given = set(given)
    network.variable(x)
    network.variable(y)
    for g in given:
        network.variable(g)
    if x == y:
        raise NetworkError("BAD_QUERY", "x and y must be distinct")
    if x in given or y in given:
        raise NetworkError("BAD_QUERY", "endpoints may not be in the conditioning set")

    collider_open = given | {d for g in given for d in _ancestor_closure(network, g)}

    # Nodes visited as (node, direction of entry): "up" = entered from a
    # child (moving against the arrow), "down" = entered from a parent.
    visited: set[tuple[str, str]] = set()
    frontier: list[tuple[str, str]] = [(x, "up")]
    while frontier:
        node, direction = frontier.pop()
        if (node, direction) in visited:
            continue
        visited.add((node, direction))
        if node == y and node not in given:
            return False
        if direction == "up" and node not in given:
            for parent in _parents(network, node):
                frontier.append((parent, "up"))
            for child in network.children_of(node):
                frontier.append((child, "down"))
        elif direction == "down":
            if node not in given:
                for child in network.children_of(node):
                    frontier.append((child, "down"))
            if node in collider_open:
                for parent in _parents(network, node):
                    frontier.append((parent, "up"))
    return True


def _parents(network: Network, var_id: str) -> tuple[str, ...]:
    return tuple(p for (p, c) in network.edges if c == var_id)


def _ancestor_closure(network: Network, var_id: str) -> set[str]:
    """All ancestors of var_id (a collider is opened by conditioning on any
    of its descendants, i.e. the collider is an ancestor of a given node)."""
    out: set[str] = set()
    stack = [var_id]
    while stack:
        node = stack.pop()
        for parent in _parents(network, node):
            if parent not in out:
                out.add(parent)
                stack.append(parent)
    return out


def classify_paths(network: Network, exposure: str, outcome: str,
                   given: Iterable[str]) -> list[PathReport]:
    """Enumerate all simple undirected paths between exposure and outcome and
    label each interior node CHAIN, FORK, or COLLIDER from arrow orientation.

    Ordered shortest first, ties lexicographic by node sequence. Raises
    PATH_LIMIT past 10,000 paths (the bundled models have a handful).
    """
    given = set(given)
    network.variable(exposure)
    network.variable(outcome)
    if exposure == outcome:
        raise NetworkError("BAD_QUERY", "exposure and outcome must be distinct")

    # Undirected adjacency with edge direction tags.
    neighbors: dict[str, list[tuple[str, str]]] = {v.id: [] for v in network.variables}
    for parent, child in sorted(network.edges):
        neighbors[parent].append((child, "->"))
        neighbors[child].append((parent, "<-"))

    raw_paths: list[tuple[tuple[str, ...], tuple[str, ...]]] = []

    def walk(node: str, nodes: list[str], dirs: list[str]) -> None:
        if node == outcome:
            raw_paths.append((tuple(nodes), tuple(dirs)))
            if len(raw_paths) > MAX_SIMPLE_PATHS:
                raise NetworkError(PATH_LIMIT, f"more than {MAX_SIMPLE_PATHS} simple paths")
            return
        for nxt, direction in neighbors[node]:
            if nxt in nodes:
                continue
            walk(nxt, nodes + [nxt], dirs + [direction])

    walk(exposure, [exposure], [])
    raw_paths.sort(key=lambda p: (len(p[0]), p[0]))

    reports: list[PathReport] = []
    for nodes, dirs in raw_paths:
        roles: list[str] = []
        open_path = True
        for i in range(1, len(nodes) - 1):
            incoming = dirs[i - 1]  # edge between nodes[i-1] and nodes[i]
            outgoing = dirs[i]      # edge between nodes[i] and nodes[i+1]
            if incoming == "->" and outgoing == "<-":
                role = COLLIDER
            elif incoming == "<-" and outgoing == "->":
                role = FORK
            else:
                role = CHAIN
            roles.append(role)
            node = nodes[i]
            if role == COLLIDER:
                opened = node in given or bool(_descendants(network, node) & given)
                if not opened:
                    open_path = False
            else:
                if node in given:
                    open_path = False
        reports.append(PathReport(nodes=nodes, directions=dirs,
                                  node_roles=tuple(roles), open_given=open_path))
    return reports


def audit_bias(network: Network, exposure: str, outcome: str, outcome_state: str,
               exposure_states: tuple[str, str], selection: Evidence) -> BiasAuditReport:
    """Contrast the selection-conditioned, population, and interventional
    effect of the exposure on the outcome, with the paths that explain any gap."""
    e1, e0 = exposure_states
    exp_var = network.variable(exposure)
    exp_var.state_index(e1)
    exp_var.state_index(e0)
    network.variable(outcome).state_index(outcome_state)
    if exposure in selection or outcome in selection:
        raise NetworkError("DUPLICATE_ASSIGNMENT",
                           "exposure and outcome may not be selection variables")
    if exposure == outcome:
        raise NetworkError("BAD_QUERY", "exposure and outcome must be distinct")

    def conditioned(state: str, extra: Evidence) -> float:
        ev = dict(extra)
        ev[exposure] = state
        return query_posterior(network, ev, outcome).distribution[outcome_state]

    def intervened(state: str) -> float:
        result = interventional_query(network, Intervention(exposure, state), {}, outcome)
        return result.distribution[outcome_state]

    selected = conditioned(e1, selection) - conditioned(e0, selection)
    population = conditioned(e1, {}) - conditioned(e0, {})
    interventional = intervened(e1) - intervened(e0)

    return BiasAuditReport(
        exposure=exposure,
        outcome=outcome,
        exposure_states=(e1, e0),
        outcome_state=outcome_state,
        selection=dict(selection),
        selected_contrast=selected,
        population_contrast=population,
        interventional_contrast=interventional,
        paths_unconditioned=tuple(classify_paths(network, exposure, outcome, set())),
        paths_selected=tuple(classify_paths(network, exposure, outcome, set(selection))),
        reversal=selected * interventional < 0,
    )
