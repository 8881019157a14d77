import itertools
import random

import numpy as np
import pytest

from colliderbn import (Factor, NetworkError, build_berkson_dating,
                        build_contact_model, build_realistic_smoking,
                        build_simple_smoking, build_stress_model,
                        elimination_order, enumerate_joint, factor_from_cpt,
                        factor_marginalize, factor_product, factor_reduce,
                        prior_marginals, query_posterior)
from conftest import random_network

FIXTURES = [
    build_simple_smoking(0.10),
    build_simple_smoking(0.11),
    build_realistic_smoking(1.0),
    build_realistic_smoking(1.02),
    build_stress_model(),
    build_contact_model(),
    build_berkson_dating(),
]


def simple():
    return build_simple_smoking(0.10)


# -- factor algebra ----------------------------------------------------------

def test_factor_from_parentless_cpt():
    network = simple()
    f = factor_from_cpt(network, network.cpt("smoker"))
    assert f.scope == ("smoker",)
    assert np.allclose(f.values, [0.27, 0.73])


def test_factor_from_tested_cpt():
    network = simple()
    f = factor_from_cpt(network, network.cpt("tested"))
    assert f.scope == ("smoker", "covid19", "tested")
    assert f.values.size == 8
    assert f.values[0, 0, 0] == pytest.approx(0.10)  # smoker, covid, tested
    assert f.values[1, 0, 0] == pytest.approx(0.25)


def test_factor_from_point_mass_cpt():
    from colliderbn.core import point_mass_cpt
    network = simple()
    f = factor_from_cpt(network, point_mass_cpt(network.variable("smoker"), "true"))
    assert set(f.values.flatten()) == {0.0, 1.0}


def test_product_with_unit_factor_is_identity():
    network = simple()
    f = factor_from_cpt(network, network.cpt("tested"))
    unit = Factor((), np.array(1.0))
    result = factor_product(unit, f)
    assert result.scope == f.scope
    assert np.array_equal(result.values, f.values)


def test_product_of_disjoint_factors():
    a = Factor(("smoker",), np.array([0.27, 0.73]))
    b = Factor(("covid19",), np.array([0.1, 0.9]))
    product = factor_product(a, b)
    assert product.scope == ("smoker", "covid19")
    assert product.values[0, 0] == pytest.approx(0.027)


def test_product_with_self_squares_entries():
    a = Factor(("x",), np.array([0.2, 0.8]))
    assert np.allclose(factor_product(a, a).values, [0.04, 0.64])


def test_marginalize_product_recovers_prior():
    a = Factor(("smoker",), np.array([0.27, 0.73]))
    b = Factor(("covid19",), np.array([0.1, 0.9]))
    joint = factor_product(a, b)
    assert np.allclose(factor_marginalize(joint, "covid19").values, [0.27, 0.73])


def test_marginalize_joint_to_tested():
    network = simple()
    joint = Factor((), np.array(1.0))
    for cpt in network.cpts:
        joint = factor_product(joint, factor_from_cpt(network, cpt))
    for var in ("smoker", "covid19"):
        joint = factor_marginalize(joint, var)
    assert joint.scope == ("tested",)
    assert joint.values[0] == pytest.approx(0.0988, abs=1e-12)


def test_marginalize_single_variable_to_scalar():
    f = Factor(("x",), np.array([0.4, 0.6]))
    out = factor_marginalize(f, "x")
    assert out.scope == ()
    assert out.values == pytest.approx(1.0)


def test_marginalize_missing_variable_raises():
    f = Factor(("x",), np.array([0.4, 0.6]))
    with pytest.raises(NetworkError):
        factor_marginalize(f, "y")


def test_reduce_tested_factor():
    network = simple()
    f = factor_from_cpt(network, network.cpt("tested"))
    reduced = factor_reduce(f, network, {"tested": "true"})
    assert reduced.scope == ("smoker", "covid19")
    assert reduced.values[0, 0] == pytest.approx(0.10)


def test_reduce_outside_scope_is_noop():
    network = simple()
    f = factor_from_cpt(network, network.cpt("smoker"))
    reduced = factor_reduce(f, network, {"tested": "true"})
    assert reduced.scope == f.scope
    assert np.array_equal(reduced.values, f.values)


def test_reduce_to_empty_scope():
    network = simple()
    f = factor_from_cpt(network, network.cpt("smoker"))
    reduced = factor_reduce(f, network, {"smoker": "false"})
    assert reduced.scope == ()
    assert reduced.values == pytest.approx(0.73)


def test_reduce_invalid_state_raises():
    network = simple()
    f = factor_from_cpt(network, network.cpt("smoker"))
    with pytest.raises(NetworkError):
        factor_reduce(f, network, {"smoker": "maybe"})


# -- elimination ordering ----------------------------------------------------

def test_min_fill_eliminates_smoker_first():
    network = build_realistic_smoking(1.0)
    order = elimination_order(network, keep={"covid19", "tested"})
    assert order[0] == "smoker"


def test_keep_all_gives_empty_order():
    network = simple()
    assert elimination_order(network, keep=set(network.variable_ids)) == []


def test_chain_order_uses_declaration_tie_break():
    from colliderbn import Cpt, DiscreteVariable, Network
    variables = [DiscreteVariable(i, i, ("true", "false")) for i in "abc"]
    network = Network(
        name="chain", variables=variables,
        edges=[("a", "b"), ("b", "c")],
        cpts=[Cpt("a", (), ((0.5, 0.5),)),
              Cpt("b", ("a",), ((0.2, 0.8), (0.7, 0.3))),
              Cpt("c", ("b",), ((0.4, 0.6), (0.9, 0.1)))])
    assert elimination_order(network, keep={"c"}) == ["a", "b"]


# -- posterior queries -------------------------------------------------------

def test_collider_conditioning_smoker_true():
    result = query_posterior(simple(), {"tested": "true", "smoker": "true"}, "covid19")
    assert result.distribution["true"] == pytest.approx(2 / 11, abs=1e-12)


def test_collider_conditioning_smoker_false():
    result = query_posterior(simple(), {"tested": "true", "smoker": "false"}, "covid19")
    assert result.distribution["true"] == pytest.approx(5 / 23, abs=1e-12)


def test_smokers_underrepresented_among_tested():
    result = query_posterior(simple(), {"tested": "true"}, "smoker")
    assert result.distribution["true"] == pytest.approx(0.15030364372469635, abs=1e-12)


def test_empty_evidence_prior():
    result = query_posterior(simple(), {}, "covid19")
    assert result.distribution["true"] == pytest.approx(0.10, abs=1e-12)
    assert result.evidence_probability == 1.0


def test_realistic_conditioned_contrast():
    network = build_realistic_smoking(1.0)
    smoker = query_posterior(network, {"tested": "true", "smoker": "true"}, "covid19")
    nonsmoker = query_posterior(network, {"tested": "true", "smoker": "false"}, "covid19")
    assert smoker.distribution["true"] == pytest.approx(0.1548490801928916, abs=1e-9)
    assert nonsmoker.distribution["true"] == pytest.approx(0.17387529537887766, abs=1e-9)


def test_target_in_evidence_rejected():
    with pytest.raises(NetworkError) as exc:
        query_posterior(simple(), {"smoker": "true"}, "smoker")
    assert exc.value.code == "TARGET_IN_EVIDENCE"


def test_impossible_evidence_rejected():
    network = build_simple_smoking(0.0)
    with pytest.raises(NetworkError) as exc:
        query_posterior(network, {"smoker": "true", "covid19": "true"}, "tested")
    assert exc.value.code == "IMPOSSIBLE_EVIDENCE"


def test_prior_marginals_match_queries():
    network = build_realistic_smoking(1.0)
    marginals = prior_marginals(network)
    assert marginals["smoker"]["true"] == pytest.approx(0.273, abs=1e-12)
    assert marginals["healthcare"]["true"] == pytest.approx(0.05, abs=1e-12)
    for var in network.variable_ids:
        assert marginals[var] == query_posterior(network, {}, var).distribution


def test_tested_prior_marginal():
    assert prior_marginals(simple())["tested"]["true"] == pytest.approx(0.0988, abs=1e-12)


# -- enumeration oracle ------------------------------------------------------

def test_oracle_agrees_on_collider_case():
    result = enumerate_joint(simple(), {"tested": "true", "smoker": "true"}, "covid19")
    assert result.distribution["true"] == pytest.approx(2 / 11, abs=1e-12)


def test_oracle_full_assignment_is_cpt_product():
    network = simple()
    evidence = {"smoker": "true", "covid19": "false", "tested": "true"}
    result = enumerate_joint(network, {k: v for k, v in evidence.items() if k != "tested"},
                             "tested")
    # P(tested=true | smoker=true, covid19=false) is a single CPT entry
    assert result.distribution["true"] == pytest.approx(0.05, abs=1e-12)
    assert result.evidence_probability == pytest.approx(0.27 * 0.9, abs=1e-12)


def test_oracle_cap():
    rng = random.Random(0)
    network = random_network(rng, max_vars=5)
    with pytest.raises(NetworkError) as exc:
        enumerate_joint(network, {}, network.variable_ids[0], cap=1)
    assert exc.value.code == "STATE_SPACE_TOO_LARGE"


def _evidence_sets(network, max_size):
    ids = network.variable_ids
    yield {}
    for size in range(1, max_size + 1):
        for combo in itertools.combinations(ids, size):
            for states in itertools.product(*(network.variable(v).states for v in combo)):
                yield dict(zip(combo, states))


@pytest.mark.parametrize("network", FIXTURES, ids=lambda n: n.name)
def test_oracle_equivalence_up_to_two_evidence_vars(network):
    for evidence in _evidence_sets(network, 2):
        for target in network.variable_ids:
            if target in evidence:
                continue
            try:
                ve = query_posterior(network, evidence, target)
            except NetworkError as exc:
                assert exc.code == "IMPOSSIBLE_EVIDENCE"
                with pytest.raises(NetworkError):
                    enumerate_joint(network, evidence, target)
                continue
            oracle = enumerate_joint(network, evidence, target)
            for state in network.variable(target).states:
                assert ve.distribution[state] == pytest.approx(
                    oracle.distribution[state], abs=1e-12)
            assert ve.evidence_probability == pytest.approx(
                oracle.evidence_probability, abs=1e-12)


@pytest.mark.parametrize("network", FIXTURES, ids=lambda n: n.name)
def test_order_invariance(network):
    evidence = {"tested": "true"} if network.has_variable("tested") else {}
    target = "covid19" if network.has_variable("covid19") else network.variable_ids[0]
    if target in evidence:
        target = network.variable_ids[0]
    eliminable = [v for v in network.variable_ids if v != target and v not in evidence]
    reference = query_posterior(network, evidence, target)
    for order in itertools.permutations(eliminable):
        result = query_posterior(network, evidence, target, order=list(order))
        for state, p in reference.distribution.items():
            assert result.distribution[state] == pytest.approx(p, abs=1e-12)


@pytest.mark.parametrize("network", FIXTURES, ids=lambda n: n.name)
def test_distributions_normalized(network):
    for evidence in _evidence_sets(network, 1):
        for target in network.variable_ids:
            if target in evidence:
                continue
            try:
                result = query_posterior(network, evidence, target)
            except NetworkError:
                continue
            assert sum(result.distribution.values()) == pytest.approx(1.0, abs=1e-9)


def test_null_model_marginal_independence():
    network = simple()
    prior = query_posterior(network, {}, "covid19").distribution["true"]
    for s in ("true", "false"):
        conditioned = query_posterior(network, {"smoker": s}, "covid19").distribution["true"]
        assert conditioned == pytest.approx(prior, abs=1e-12)
    opened = [query_posterior(network, {"smoker": s, "tested": "true"}, "covid19")
              .distribution["true"] for s in ("true", "false")]
    assert abs(opened[0] - opened[1]) >= 0.03


def test_evidence_probability_matches_marginal():
    result = query_posterior(simple(), {"tested": "true"}, "smoker")
    assert result.evidence_probability == pytest.approx(0.0988, abs=1e-12)


def test_oracle_equivalence_on_random_networks():
    rng = random.Random(20240824)
    for _ in range(25):
        network = random_network(rng, max_vars=5, max_states=3)
        ids = network.variable_ids
        target = ids[rng.randrange(len(ids))]
        evidence = {}
        for var in ids:
            if var != target and rng.random() < 0.4:
                states = network.variable(var).states
                evidence[var] = states[rng.randrange(len(states))]
        try:
            ve = query_posterior(network, evidence, target)
        except NetworkError:
            continue
        oracle = enumerate_joint(network, evidence, target)
        for state, p in ve.distribution.items():
            assert p == pytest.approx(oracle.distribution[state], abs=1e-10)
