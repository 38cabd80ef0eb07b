"""Coordinate dictionaries from cluster-type presentations, and the B6 cone.

Run: python3 demos/04_cluster_dictionaries.py
"""

from ftskey.varieties import checks as vc

for r in vc.cl10_specialization_checks(3):
    print(f"{r.check:40s} {r.status}")

b6 = vc.b6_cone_check()
print("B6 cone:", b6.status)
print("  equations still involving d2 after the literal substitution:", b6.details["literal_d2_equations"])
print("  after subtracting d2 times the second row:", b6.details["d2_after_row_operation"])

# Without the cubic correction in d0 the elimination fails.
print("without the cubic term:", vc.b6_cone_check(include_cubic=False).status)

# Z12: the adjugate identity needs the trace-free form.
print("Z12 residual, trace-free:", vc.z12_beta_adjoint_residual(trace_free=True).is_zero())
print("Z12 residual, full trace:", vc.z12_beta_adjoint_residual(trace_free=False).is_zero())
