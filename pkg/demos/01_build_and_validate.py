"""
Building a discrete Bayesian network by hand and validating it
==============================================================

A network is just variables, edges, and one conditional probability
table per variable.  The validator reports every problem at once, with
a machine-readable code and a location.
"""

from colliderbn import Cpt, DiscreteVariable, Network, validate_network

rain = DiscreteVariable("rain", "Rain today", ("yes", "no"))
sprinkler = DiscreteVariable("sprinkler", "Sprinkler ran", ("yes", "no"))
grass = DiscreteVariable("grass", "Grass is wet", ("yes", "no"))

network = Network(
    name="wet-grass",
    variables=[rain, sprinkler, grass],
    edges=[("rain", "grass"), ("sprinkler", "grass")],
    cpts=[
        Cpt("rain", (), ((0.2, 0.8),)),
        Cpt("sprinkler", (), ((0.3, 0.7),)),
        # rows over (rain, sprinkler): (y,y), (y,n), (n,y), (n,n)
        Cpt("grass", ("rain", "sprinkler"),
            ((0.99, 0.01), (0.9, 0.1), (0.8, 0.2), (0.05, 0.95))),
    ],
)

report = validate_network(network)
print("valid:", report.ok)

# break a row on purpose and look at the diagnostics
broken = Network(
    name="wet-grass",
    variables=[rain, sprinkler, grass],
    edges=[("rain", "grass"), ("sprinkler", "grass")],
    cpts=[
        Cpt("rain", (), ((0.2, 0.7),)),  # does not sum to 1
        Cpt("sprinkler", (), ((0.3, 0.7),)),
        Cpt("grass", ("rain", "sprinkler"),
            ((0.99, 0.01), (0.9, 0.1), (0.8, 0.2), (0.05, 0.95))),
    ],
)
for violation in validate_network(broken).violations:
    print(violation.code, "at", violation.location, "-", violation.message)
