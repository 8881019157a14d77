"""
Interventions and graph structure
=================================

`apply_do` performs graph surgery: incoming edges to the intervened
variable are removed and its CPT becomes a point mass.  The difference
between observing and intervening is the whole story of selection bias.
`d_separated` and `classify_paths` expose the structural reasons.
"""

from colliderbn import (Intervention, build_realistic_smoking, classify_paths,
                        d_separated, interventional_query, query_posterior)

network = build_realistic_smoking(relative_risk=1.02)

# observation: among the tested, smokers appear better off
obs_s = query_posterior(network, {"tested": "true", "smoker": "true"}, "covid19")
obs_n = query_posterior(network, {"tested": "true", "smoker": "false"}, "covid19")
print(f"observed   P(covid19 | tested, smoker)  = {obs_s.distribution['true']:.5f}")
print(f"observed   P(covid19 | tested, ~smoker) = {obs_n.distribution['true']:.5f}")

# intervention: forcing smoking raises the risk, as the model says it should
do_s = interventional_query(network, Intervention("smoker", "true"), {}, "covid19")
do_n = interventional_query(network, Intervention("smoker", "false"), {}, "covid19")
print(f"do(smoker=true)  -> P(covid19) = {do_s.distribution['true']:.5f}")
print(f"do(smoker=false) -> P(covid19) = {do_n.distribution['true']:.5f}")

# the structural view: which paths carry the spurious association?
print("\npaths from smoker to covid19 given {tested}:")
for path in classify_paths(network, "smoker", "covid19", {"tested"}):
    status = "open" if path.open_given else "blocked"
    print(f"  {' '.join(path.tokens())}  [{status}]")

# in the null model (no direct effect) the pair is separated by healthcare
null = build_realistic_smoking(relative_risk=1.0)
print("\nnull model, d-separated given {healthcare}:",
      d_separated(null, "smoker", "covid19", {"healthcare"}))
