import random
from pathlib import Path

import pytest

from colliderbn import Cpt, DiscreteVariable, Network

REPO_ROOT = Path(__file__).resolve().parents[1]
MODELS_DIR = REPO_ROOT / "models"


@pytest.fixture(scope="session")
def models_dir() -> Path:
    return MODELS_DIR


def random_network(rng: random.Random, max_vars: int = 6, max_states: int = 4) -> Network:
    """A random valid network with <= max_vars variables: random DAG over a
    declaration-order topological order, dirichlet-free random CPT rows."""
    n = rng.randint(1, max_vars)
    variables = []
    for i in range(n):
        k = rng.randint(2, max_states)
        variables.append(DiscreteVariable(
            id=f"v{i}", label=f"Variable {i}",
            states=tuple(f"s{j}" for j in range(k))))
    edges = []
    parents: dict[str, list[str]] = {v.id: [] for v in variables}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.4:
                edges.append((variables[i].id, variables[j].id))
                parents[variables[j].id].append(variables[i].id)
    cpts = []
    for v in variables:
        row_count = 1
        for p in parents[v.id]:
            row_count *= len(next(x for x in variables if x.id == p).states)
        rows = []
        for _ in range(row_count):
            weights = [rng.random() + 1e-3 for _ in v.states]
            total = sum(weights)
            rows.append(tuple(w / total for w in weights))
        cpts.append(Cpt(child=v.id, parents=tuple(parents[v.id]), rows=tuple(rows)))
    return Network(name="random", variables=variables, edges=edges, cpts=cpts)
