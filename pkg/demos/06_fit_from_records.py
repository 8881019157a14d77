"""
Estimating CPTs from records
============================

`cpt_from_counts` fills a table from tabulated observations with
optional Laplace smoothing.  Here we synthesize counts from a known
model and recover its tables.
"""

import io

from colliderbn import (build_simple_smoking, cpt_from_counts,
                        enumerate_joint, read_records)

truth = build_simple_smoking()

# tabulate the exact joint as integer counts at a large scale
scale = 10 ** 8
lines = ["smoker,covid19,tested,count"]
for s in ("true", "false"):
    for c in ("true", "false"):
        for t in ("true", "false"):
            result = enumerate_joint(truth, {"smoker": s, "covid19": c}, "tested")
            p = result.evidence_probability * result.distribution[t]
            lines.append(f"{s},{c},{t},{round(p * scale)}")
records = read_records("\n".join(lines))

for child, parents in (("smoker", []), ("covid19", []),
                       ("tested", ["smoker", "covid19"])):
    estimated = cpt_from_counts(truth, records, child, parents, smoothing=0)
    print(f"{child} | {','.join(parents) or '()'}:")
    for row, true_row in zip(estimated.rows, truth.cpt(child).rows):
        rendered = ", ".join(f"{p:.6f}" for p in row)
        drift = max(abs(a - b) for a, b in zip(row, true_row))
        print(f"  ({rendered})   max drift {drift:.1e}")
