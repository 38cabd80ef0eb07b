"""U14: affine charts, singular strata and weighted projectivization.

Run: python3 demos/02_u14_charts_and_weights.py
"""

from ftskey import weights as wt
from ftskey.varieties import checks as vc
from ftskey.varieties.generators import generate

u14 = generate("U14")
print(f"U14: {len(u14)} equations in {len(u14.ring.names)} variables")

# On each coordinate chart the variety is a graph or a Pfaffian cone.
for chart in vc.CHARTS:
    r = vc.chart_check(chart)
    print(f"chart {chart:3s} {r.status}")

# Jacobian rank drops from 4 exactly on the singular strata.
print("ranks:", vc.singular_samples(42, 5).details)

# Weights making every equation homogeneous form a 6-dimensional family.
sol = wt.solve_weights(wt.weight_constraints(u14), wt.U14_FREE)
print("weight solution:", sol.to_json())

# One concrete choice and its degree bookkeeping.
rep = wt.graded_report(u14, wt.WeightAssignment(wt.U14_EXAMPLE))
data = rep.to_json()
print("equation degrees:", data["equation_degrees"])
print("delta:", data["delta"], " ambient twist:", data["ambient_canonical_twist"],
      " variety twist:", data["variety_canonical_twist"])

# Zeroing the weight-one coordinates.
print("base locus:", vc.base_locus_check_u14().details)
