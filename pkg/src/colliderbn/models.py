"""Builders for the bundled demonstration networks and the golden
expectation table that pins their key query results."""

from __future__ import annotations

from dataclasses import dataclass, field

from .causal import Intervention
from .core import Cpt, DiscreteVariable, Network, NetworkError

BOOL = ("true", "false")

# Calibrated constants for the stress and contact models, pinned by a grid
# search (scripts/calibrate_risk_models.py) against the target
# tested-conditioned endpoints, subject to: the risk factor raises covid19
# within each healthcare stratum, and healthcare workers are more likely to
# carry the risk factor. Achieved endpoints are recorded in the fixture
# metadata.
STRESS_CONSTANTS = {
    "p_stress_given_healthcare": 0.90,
    "p_stress_given_public": 0.07,
    "p_covid_stress_healthcare": 0.006,
    "p_covid_stress_public": 0.034,
    "p_covid_nostress_healthcare": 0.004,
    "p_covid_nostress_public": 0.013,
}
STRESS_ACHIEVED = {"conditioned_on_tested": {"stress": 0.105989, "no_stress": 0.158987},
                   "targets": {"stress": 0.106, "no_stress": 0.159}}

CONTACT_CONSTANTS = {
    "p_contact_given_healthcare": 0.75,
    "p_contact_given_public": 0.01,
    "p_covid_contact_healthcare": 0.006,
    "p_covid_contact_public": 0.033,
    "p_covid_nocontact_healthcare": 0.005,
    "p_covid_nocontact_public": 0.006,
}
CONTACT_ACHIEVED = {"conditioned_on_tested": {"contact": 0.065974, "no_contact": 0.078980},
                    "population_risk_ratio": 1.914,
                    "targets": {"contact": 0.066, "no_contact": 0.079,
                                "population_risk_ratio": [1.8, 2.2]}}


def _bool_var(var_id: str, label: str) -> DiscreteVariable:
    return DiscreteVariable(id=var_id, label=label, states=BOOL)


def _binary_rows(*p_true: float) -> tuple[tuple[float, float], ...]:
    """One (p, 1-p) row per given true-probability, in canonical row order.

    Complements are rounded to 12 significant digits so builder output is
    bit-identical to its serialized-and-reparsed form.
    """
    return tuple((p, float(f"{1.0 - p:.12g}")) for p in p_true)


# tested | (healthcare, covid19), shared by the 4-node models:
# near-certain for symptomatic healthcare workers, near-zero for
# asymptomatic members of the public.
_TESTED_4NODE_ROWS = _binary_rows(0.99, 0.10, 0.15, 0.01)


def build_simple_smoking(p_covid_given_smoker: float = 0.10) -> Network:
    """The 3-node collider demonstration: smoker and covid19 both drive
    selection into testing; smokers are under-tested.

    The argument is P(covid19 | smoker); 0.10 gives the no-effect null
    model, 0.11 the variant where a genuinely harmful exposure looks
    protective once the analysis conditions on tested.
    """
    if not 0.0 <= p_covid_given_smoker <= 1.0:
        raise NetworkError("BAD_PROBABILITY", "p_covid_given_smoker must be in [0, 1]")
    # Under the null hypothesis the smoking link is vacuous, so the null
    # model omits the edge entirely; any other argument makes the link real.
    null = p_covid_given_smoker == 0.10
    name = "simple-smoking" if null else (
        "simple-smoking-reversal" if p_covid_given_smoker == 0.11
        else f"simple-smoking-p{p_covid_given_smoker:g}")
    edges = [("smoker", "tested"), ("covid19", "tested")]
    if null:
        covid_cpt = Cpt("covid19", (), _binary_rows(0.10))
    else:
        edges.append(("smoker", "covid19"))
        covid_cpt = Cpt("covid19", ("smoker",), _binary_rows(p_covid_given_smoker, 0.10))
    return Network(
        name=name,
        variables=[
            _bool_var("smoker", "Smoker"),
            _bool_var("covid19", "Severe COVID19"),
            _bool_var("tested", "Tested for COVID19"),
        ],
        edges=edges,
        cpts=[
            Cpt("smoker", (), _binary_rows(0.27)),
            covid_cpt,
            Cpt("tested", ("smoker", "covid19"), _binary_rows(0.10, 0.05, 0.25, 0.10)),
        ],
    )


def build_realistic_smoking(relative_risk: float = 1.0) -> Network:
    """The 4-node model adding the healthcare-worker confounder.

    Healthcare workers are over-tested, under-smoke, and carry a higher
    covid19 base rate; smoking multiplies each stratum's base rate by
    ``relative_risk`` (1.0 = null model, 1.02 = the reversal variant).
    """
    if relative_risk < 0:
        raise NetworkError("BAD_PROBABILITY", "relative_risk must be non-negative")
    base_h, base_n = 0.03, 0.01
    smoker_h, smoker_n = base_h * relative_risk, base_n * relative_risk
    if smoker_h > 1.0 or smoker_n > 1.0:
        raise NetworkError("BAD_PROBABILITY", "relative_risk pushes a probability above 1")
    # As in the simple model, the null hypothesis drops the vacuous smoking
    # link; other relative risks make it real.
    null = relative_risk == 1.0
    name = ("realistic-smoking" if null
            else f"realistic-smoking-rr{round(relative_risk * 100):d}")
    edges = [
        ("healthcare", "smoker"),
        ("healthcare", "covid19"),
        ("healthcare", "tested"),
        ("covid19", "tested"),
    ]
    if null:
        covid_cpt = Cpt("covid19", ("healthcare",), _binary_rows(base_h, base_n))
    else:
        edges.append(("smoker", "covid19"))
        # rows over (healthcare, smoker): (h,s), (h,~s), (~h,s), (~h,~s)
        covid_cpt = Cpt("covid19", ("healthcare", "smoker"),
                        _binary_rows(smoker_h, base_h, smoker_n, base_n))
    return Network(
        name=name,
        variables=[
            _bool_var("healthcare", "Healthcare worker"),
            _bool_var("smoker", "Smoker"),
            _bool_var("covid19", "Severe COVID19"),
            _bool_var("tested", "Tested for COVID19"),
        ],
        edges=edges,
        cpts=[
            Cpt("healthcare", (), _binary_rows(0.05)),
            Cpt("smoker", ("healthcare",), _binary_rows(0.14, 0.28)),
            covid_cpt,
            Cpt("tested", ("healthcare", "covid19"), _TESTED_4NODE_ROWS),
        ],
    )


def _risk_factor_model(name: str, var_id: str, label: str,
                       constants: dict[str, float], key: str) -> Network:
    c = constants
    return Network(
        name=name,
        variables=[
            _bool_var("healthcare", "Healthcare worker"),
            _bool_var(var_id, label),
            _bool_var("covid19", "Severe COVID19"),
            _bool_var("tested", "Tested for COVID19"),
        ],
        edges=[
            ("healthcare", var_id),
            ("healthcare", "covid19"),
            (var_id, "covid19"),
            ("healthcare", "tested"),
            ("covid19", "tested"),
        ],
        cpts=[
            Cpt("healthcare", (), _binary_rows(0.05)),
            Cpt(var_id, ("healthcare",),
                _binary_rows(c[f"p_{key}_given_healthcare"], c[f"p_{key}_given_public"])),
            # rows over (healthcare, risk factor)
            Cpt("covid19", ("healthcare", var_id),
                _binary_rows(c[f"p_covid_{key}_healthcare"],
                             c[f"p_covid_no{key}_healthcare"],
                             c[f"p_covid_{key}_public"],
                             c[f"p_covid_no{key}_public"])),
            Cpt("tested", ("healthcare", "covid19"), _TESTED_4NODE_ROWS),
        ],
    )


def build_stress_model() -> Network:
    """Risk factor that is *more* prevalent among healthcare workers, so the
    testing collider and the healthcare confounder push the same way: under
    selection on tested, stress looks protective even though it raises
    covid19 in both strata."""
    return _risk_factor_model("stress", "stress", "Stress", STRESS_CONSTANTS, "stress")


def build_contact_model() -> Network:
    """Same shape as the stress model with contact-with-patients as the risk
    factor; calibrated so contact roughly doubles population covid19 risk yet
    looks protective under selection on tested."""
    return _risk_factor_model("contact", "contact", "Contact with COVID19 patients",
                              CONTACT_CONSTANTS, "contact")


def build_berkson_dating() -> Network:
    """The classic dating collider: looks and personality are marginally
    independent but anti-correlated among the people one might date.
    Constants are illustrative; tests on this fixture are sign-only."""
    return Network(
        name="berkson-dating",
        variables=[
            DiscreteVariable("looks", "Looks", ("attractive", "unattractive")),
            DiscreteVariable("personality", "Personality", ("nice", "mean")),
            _bool_var("date", "Would date"),
        ],
        edges=[("looks", "date"), ("personality", "date")],
        cpts=[
            Cpt("looks", (), ((0.5, 0.5),)),
            Cpt("personality", (), ((0.5, 0.5),)),
            # rows over (looks, personality)
            Cpt("date", ("looks", "personality"), _binary_rows(0.8, 0.6, 0.4, 0.05)),
        ],
    )


FIXTURE_BUILDERS = {
    "simple-smoking": lambda: build_simple_smoking(0.10),
    "simple-smoking-reversal": lambda: build_simple_smoking(0.11),
    "realistic-smoking": lambda: build_realistic_smoking(1.0),
    "realistic-smoking-rr102": lambda: build_realistic_smoking(1.02),
    "stress": build_stress_model,
    "contact": build_contact_model,
    "berkson-dating": build_berkson_dating,
}


@dataclass(frozen=True)
class GoldenExpectation:
    """One pinned query result with its provenance."""

    fixture: str
    evidence: dict[str, str]
    interventions: tuple[Intervention, ...]
    target: str
    state: str
    expected: float
    tolerance: float
    provenance: str


def golden_table() -> list[GoldenExpectation]:
    """The frozen expectation table. 'derived' entries were computed by
    direct arithmetic over the model tables (exact fractions); 'reported'
    entries restate the source's rounded monitor values."""

    def g(fixture, evidence, target, state, expected, tolerance, provenance,
          interventions=()):
        return GoldenExpectation(fixture=fixture, evidence=dict(evidence),
                                 interventions=tuple(interventions), target=target,
                                 state=state, expected=expected, tolerance=tolerance,
                                 provenance=provenance)

    return [
        g("simple-smoking", {}, "covid19", "true", 0.10, 1e-12,
          "model assumption: 10% population covid19 rate"),
        g("simple-smoking", {}, "tested", "true", 0.0988, 1e-12,
          "derived: 0.27*(0.1*0.10+0.9*0.05) + 0.73*(0.1*0.25+0.9*0.10)"),
        g("simple-smoking", {"tested": "true"}, "smoker", "true",
          0.15030364372469636, 1e-12,
          "derived: 0.01485/0.0988 = 297/1976; reported rounded to 15%"),
        g("simple-smoking", {"tested": "true", "smoker": "true"}, "covid19", "true",
          0.18181818181818182, 1e-12,
          "derived: 0.010/0.055 = 2/11; reported rounded to 18.1%"),
        g("simple-smoking", {"tested": "true", "smoker": "false"}, "covid19", "true",
          0.21739130434782608, 1e-12,
          "derived: 0.025/0.115 = 5/23; reported rounded to 21.7%"),
        g("simple-smoking-reversal", {"tested": "true", "smoker": "true"},
          "covid19", "true", 0.1981981981981982, 1e-12,
          "derived: 0.011/0.0555 = 22/111"),
        g("simple-smoking-reversal", {"tested": "true", "smoker": "false"},
          "covid19", "true", 0.21739130434782608, 1e-12,
          "derived: non-smoker rows unchanged from the null model"),
        g("realistic-smoking", {}, "smoker", "true", 0.273, 1e-12,
          "derived: 0.05*0.14 + 0.95*0.28"),
        g("realistic-smoking", {"tested": "true", "smoker": "true"}, "covid19", "true",
          0.1548490801928916, 1e-9,
          "derived: 6069/39193 by exact-fraction enumeration; reported ~15%"),
        g("realistic-smoking", {"tested": "true", "smoker": "false"}, "covid19", "true",
          0.17387529537887766, 1e-9,
          "derived by exact-fraction enumeration; reported ~17%"),
        g("realistic-smoking-rr102", {}, "covid19", "true", 0.01122, 1e-9,
          "derived back-door sum: 0.05*0.0306 + 0.95*0.0102",
          interventions=(Intervention("smoker", "true"),)),
        g("realistic-smoking-rr102", {}, "covid19", "true", 0.01100, 1e-9,
          "derived back-door sum: 0.05*0.03 + 0.95*0.01",
          interventions=(Intervention("smoker", "false"),)),
    ]
