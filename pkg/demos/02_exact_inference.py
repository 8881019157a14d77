"""
Exact inference: posteriors by variable elimination
===================================================

`query_posterior` computes P(target | evidence) exactly; the
brute-force `enumerate_joint` oracle confirms the answer on small
networks.  The bundled screening model shows how conditioning on the
"tested" collider distorts an apparent association.
"""

from colliderbn import (build_simple_smoking, enumerate_joint,
                        prior_marginals, query_posterior)

network = build_simple_smoking()

print("prior marginals:")
for target, dist in prior_marginals(network).items():
    print(f"  {target}: " + ", ".join(f"{s}={p:.4f}" for s, p in dist.items()))

# among the tested, smokers look under-represented...
smoker = query_posterior(network, {"tested": "true"}, "smoker")
print(f"\nP(smoker | tested) = {smoker.distribution['true']:.4f}")

# ...and smoking looks protective, even though the model has no
# smoking -> covid19 edge at all
with_s = query_posterior(network, {"tested": "true", "smoker": "true"}, "covid19")
without = query_posterior(network, {"tested": "true", "smoker": "false"}, "covid19")
print(f"P(covid19 | tested, smoker)  = {with_s.distribution['true']:.5f}")
print(f"P(covid19 | tested, ~smoker) = {without.distribution['true']:.5f}")

# the oracle agrees to machine precision
oracle = enumerate_joint(network, {"tested": "true", "smoker": "true"}, "covid19")
drift = abs(oracle.distribution["true"] - with_s.distribution["true"])
print(f"\n|elimination - enumeration| = {drift:.2e}")
