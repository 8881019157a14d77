import itertools

import pytest

from colliderbn import (Cpt, DiscreteVariable, Intervention, Network,
                        NetworkError, apply_do, audit_bias,
                        build_berkson_dating, build_contact_model,
                        build_realistic_smoking, build_simple_smoking,
                        build_stress_model, classify_paths, d_separated,
                        enumerate_joint, interventional_query, query_posterior,
                        validate_network)

FIXTURES = [
    build_simple_smoking(0.10),
    build_simple_smoking(0.11),
    build_realistic_smoking(1.0),
    build_realistic_smoking(1.02),
    build_stress_model(),
    build_contact_model(),
    build_berkson_dating(),
]


def chain_abc():
    variables = [DiscreteVariable(i, i, ("true", "false")) for i in "abc"]
    return Network(
        name="chain", variables=variables,
        edges=[("a", "b"), ("b", "c")],
        cpts=[Cpt("a", (), ((0.3, 0.7),)),
              Cpt("b", ("a",), ((0.9, 0.1), (0.2, 0.8))),
              Cpt("c", ("b",), ((0.6, 0.4), (0.1, 0.9)))])


# -- apply_do ----------------------------------------------------------------

def test_do_severs_incoming_edges_and_fixes_state():
    network = build_stress_model()
    mutilated = apply_do(network, Intervention("stress", "true"))
    assert ("healthcare", "stress") not in mutilated.edges
    assert mutilated.cpt("stress").parents == ()
    assert mutilated.cpt("stress").rows == ((1.0, 0.0),)
    assert validate_network(mutilated).ok


def test_do_on_root_only_replaces_cpt():
    network = build_simple_smoking(0.10)
    mutilated = apply_do(network, Intervention("smoker", "true"))
    assert mutilated.edges == network.edges
    assert mutilated.cpt("smoker").rows == ((1.0, 0.0),)


def test_do_is_idempotent():
    network = build_stress_model()
    once = apply_do(network, Intervention("stress", "false"))
    twice = apply_do(once, Intervention("stress", "false"))
    assert once == twice


def test_do_changes_nothing_else():
    network = build_stress_model()
    mutilated = apply_do(network, Intervention("stress", "true"))
    assert mutilated.variables == network.variables
    for v in network.variable_ids:
        if v != "stress":
            assert mutilated.cpt(v) == network.cpt(v)
    assert {e for e in network.edges if e[1] != "stress"} == mutilated.edges


def test_do_unknown_state_raises():
    with pytest.raises(NetworkError):
        apply_do(build_stress_model(), Intervention("stress", "severe"))


# -- interventional queries --------------------------------------------------

def test_backdoor_sum_for_realistic_reversal():
    network = build_realistic_smoking(1.02)
    do_true = interventional_query(network, Intervention("smoker", "true"), {}, "covid19")
    do_false = interventional_query(network, Intervention("smoker", "false"), {}, "covid19")
    assert do_true.distribution["true"] == pytest.approx(0.01122, abs=1e-9)
    assert do_false.distribution["true"] == pytest.approx(0.01100, abs=1e-9)


def test_do_on_root_equals_conditioning():
    network = build_simple_smoking(0.11)
    do_result = interventional_query(network, Intervention("smoker", "true"), {}, "covid19")
    cond = query_posterior(network, {"smoker": "true"}, "covid19")
    for state, p in cond.distribution.items():
        assert do_result.distribution[state] == pytest.approx(p, abs=1e-12)


@pytest.mark.parametrize("network", FIXTURES, ids=lambda n: n.name)
def test_root_equivalence_on_all_fixtures(network):
    roots = [v.id for v in network.variables if not network.cpt(v.id).parents]
    for root in roots:
        for state in network.variable(root).states:
            for target in network.variable_ids:
                if target == root:
                    continue
                try:
                    cond = query_posterior(network, {root: state}, target)
                except NetworkError:
                    continue
                do_result = interventional_query(network, Intervention(root, state),
                                                 {}, target)
                for s, p in cond.distribution.items():
                    assert do_result.distribution[s] == pytest.approx(p, abs=1e-12)


def test_do_stress_is_backdoor_mixture():
    network = build_stress_model()
    for state in ("true", "false"):
        result = interventional_query(network, Intervention("stress", state), {}, "covid19")
        mixture = 0.0
        for h_state in ("true", "false"):
            p_h = query_posterior(network, {}, "healthcare").distribution[h_state]
            p_c = query_posterior(network, {"stress": state, "healthcare": h_state},
                                  "covid19").distribution["true"]
            mixture += p_h * p_c
        assert result.distribution["true"] == pytest.approx(mixture, abs=1e-12)


def test_intervention_conflicts_with_evidence():
    with pytest.raises(NetworkError) as exc:
        interventional_query(build_stress_model(), Intervention("stress", "true"),
                             {"stress": "false"}, "covid19")
    assert exc.value.code == "DUPLICATE_ASSIGNMENT"


# -- d-separation ------------------------------------------------------------

def test_collider_blocks_until_conditioned():
    network = build_simple_smoking(0.10)
    assert d_separated(network, "smoker", "covid19", set())
    assert not d_separated(network, "smoker", "covid19", {"tested"})


def test_fork_and_collider_in_realistic_model():
    null = build_realistic_smoking(1.0)
    assert d_separated(null, "smoker", "covid19", {"healthcare"})
    assert not d_separated(null, "smoker", "covid19", set())
    # with the smoking link active the pair can never be separated
    active = build_realistic_smoking(1.02)
    assert not d_separated(active, "smoker", "covid19", {"healthcare", "tested"})


def test_disconnected_components_always_separated():
    variables = [DiscreteVariable(i, i, ("true", "false")) for i in "ab"]
    network = Network(name="split", variables=variables, edges=[],
                      cpts=[Cpt("a", (), ((0.4, 0.6),)),
                            Cpt("b", (), ((0.9, 0.1),))])
    assert d_separated(network, "a", "b", set())


def test_descendant_of_collider_opens_path():
    variables = [DiscreteVariable(i, i, ("true", "false")) for i in "abcd"]
    network = Network(
        name="collider-descendant", variables=variables,
        edges=[("a", "c"), ("b", "c"), ("c", "d")],
        cpts=[Cpt("a", (), ((0.5, 0.5),)),
              Cpt("b", (), ((0.5, 0.5),)),
              Cpt("c", ("a", "b"), ((0.9, 0.1),) * 4),
              Cpt("d", ("c",), ((0.8, 0.2), (0.3, 0.7)))])
    assert d_separated(network, "a", "b", set())
    assert not d_separated(network, "a", "b", {"d"})


def test_chain_blocked_by_middle():
    network = chain_abc()
    assert not d_separated(network, "a", "c", set())
    assert d_separated(network, "a", "c", {"b"})


@pytest.mark.parametrize("network", FIXTURES, ids=lambda n: n.name)
def test_d_separation_implies_numeric_independence(network):
    ids = network.variable_ids
    for x, y in itertools.combinations(ids, 2):
        others = [v for v in ids if v not in (x, y)]
        for size in range(len(others) + 1):
            for given_vars in itertools.combinations(others, size):
                if not d_separated(network, x, y, set(given_vars)):
                    continue
                for given_states in itertools.product(
                        *(network.variable(g).states for g in given_vars)):
                    given = dict(zip(given_vars, given_states))
                    try:
                        base = enumerate_joint(network, given, x)
                    except NetworkError:
                        continue
                    for y_state in network.variable(y).states:
                        try:
                            cond = enumerate_joint(network, {**given, y: y_state}, x)
                        except NetworkError:
                            continue
                        for state, p in base.distribution.items():
                            assert cond.distribution[state] == pytest.approx(p, abs=1e-12)


@pytest.mark.parametrize("network", FIXTURES, ids=lambda n: n.name)
def test_d_separation_agrees_with_path_enumeration(network):
    ids = network.variable_ids
    for x, y in itertools.combinations(ids, 2):
        others = [v for v in ids if v not in (x, y)]
        for size in range(len(others) + 1):
            for given in itertools.combinations(others, size):
                separated = d_separated(network, x, y, set(given))
                paths = classify_paths(network, x, y, set(given))
                assert separated == all(not p.open_given for p in paths)


# -- path classification -----------------------------------------------------

def test_single_collider_path_in_simple_model():
    network = build_simple_smoking(0.10)
    closed = classify_paths(network, "smoker", "covid19", set())
    assert len(closed) == 1
    assert closed[0].node_roles == ("COLLIDER",)
    assert closed[0].tokens() == ("smoker", "->", "tested", "<-", "covid19")
    assert not closed[0].open_given
    opened = classify_paths(network, "smoker", "covid19", {"tested"})
    assert opened[0].open_given


def test_stress_model_paths():
    network = build_stress_model()
    paths = classify_paths(network, "stress", "covid19", set())
    trails = {p.tokens(): p for p in paths}
    direct = trails[("stress", "->", "covid19")]
    assert direct.node_roles == ()
    assert direct.open_given
    fork = trails[("stress", "<-", "healthcare", "->", "covid19")]
    assert fork.node_roles == ("FORK",)
    assert fork.open_given


def test_chain_path_blocked_by_middle():
    network = chain_abc()
    paths = classify_paths(network, "a", "c", {"b"})
    assert len(paths) == 1
    assert paths[0].node_roles == ("CHAIN",)
    assert not paths[0].open_given


def test_paths_sorted_shortest_first():
    network = build_stress_model()
    paths = classify_paths(network, "stress", "covid19", set())
    lengths = [len(p.nodes) for p in paths]
    assert lengths == sorted(lengths)


# -- bias audit --------------------------------------------------------------

def test_simple_reversal_audit():
    network = build_simple_smoking(0.11)
    report = audit_bias(network, "smoker", "covid19", "true",
                        ("true", "false"), {"tested": "true"})
    assert report.selected_contrast == pytest.approx(22 / 111 - 5 / 23, abs=1e-9)
    assert report.interventional_contrast == pytest.approx(0.01, abs=1e-12)
    assert report.reversal is True


def test_null_model_audits_clean():
    network = build_simple_smoking(0.10)
    report = audit_bias(network, "smoker", "covid19", "true",
                        ("true", "false"), {"tested": "true"})
    assert report.interventional_contrast == pytest.approx(0.0, abs=1e-12)
    assert report.reversal is False


def test_realistic_reversal_audit():
    network = build_realistic_smoking(1.02)
    report = audit_bias(network, "smoker", "covid19", "true",
                        ("true", "false"), {"tested": "true"})
    assert report.selected_contrast < 0
    assert report.interventional_contrast == pytest.approx(0.00022, abs=1e-9)
    assert report.reversal is True


def test_audit_population_contrast_matches_direct_queries():
    network = build_stress_model()
    report = audit_bias(network, "stress", "covid19", "true",
                        ("true", "false"), {"tested": "true"})
    direct = (query_posterior(network, {"stress": "true"}, "covid19").distribution["true"]
              - query_posterior(network, {"stress": "false"}, "covid19").distribution["true"])
    assert report.population_contrast == pytest.approx(direct, abs=1e-15)


def test_stress_sign_property():
    network = build_stress_model()
    # stress raises covid19 in both healthcare strata
    for h in ("true", "false"):
        with_stress = query_posterior(network, {"stress": "true", "healthcare": h},
                                      "covid19").distribution["true"]
        without = query_posterior(network, {"stress": "false", "healthcare": h},
                                  "covid19").distribution["true"]
        assert with_stress > without
    # healthcare raises stress
    assert (query_posterior(network, {"healthcare": "true"}, "stress").distribution["true"]
            > query_posterior(network, {"healthcare": "false"}, "stress").distribution["true"])
    # yet under selection on tested the contrast flips negative
    report = audit_bias(network, "stress", "covid19", "true",
                        ("true", "false"), {"tested": "true"})
    assert report.selected_contrast < 0
    assert report.interventional_contrast > 0
    assert report.reversal is True


def test_berkson_dating_audit_sign():
    network = build_berkson_dating()
    report = audit_bias(network, "looks", "personality", "nice",
                        ("attractive", "unattractive"), {"date": "true"})
    assert report.selected_contrast < 0
    assert report.population_contrast == pytest.approx(0.0, abs=1e-12)


def test_audit_rejects_exposure_in_selection():
    with pytest.raises(NetworkError):
        audit_bias(build_simple_smoking(0.10), "smoker", "covid19", "true",
                   ("true", "false"), {"smoker": "true"})
