"""Build the FTS of the diagonal pair and walk through its invariants.

Run: python3 demos/01_diagonal_fts.py
"""

from gmpy2 import mpq

from ftskey.fts import diagonal_example
from ftskey.fts_checks import (SEGRE_EQUATIONS, axiom_check, delta_span_dim, equations_match_check,
                               peirce_check, streg_equations)

f = diagonal_example()
print("cubic norm on x:", f.Nx)
print("cubic norm on y:", f.Ny)
print("trace matrix:")
for row in f.beta:
    print("  ", [str(e) for e in row])
print("its determinant:", f.dbeta)

# The axioms hold symbolically, with no sampling.
for r in axiom_check(f):
    print(f"{r.check:40s} {r.status}")

# The Peirce operator of the base point has four rational eigenvalues.
print("Peirce spectrum:", peirce_check(f).details["spectrum"])

# Strictly regular locus: nine quadrics, which rescale to the Segre equations.
streg = streg_equations(f, (mpq(-1, 3), mpq(-1, 3)))
for label, poly in zip(streg.labels, streg.polys):
    print(f"  {label}: {poly} = 0")
print("matches the Segre-type equations:",
      equations_match_check(f, SEGRE_EQUATIONS, (mpq(-1, 3), mpq(-1, 3))).ok)

print("span of the Delta images at (1, 1, 1):", delta_span_dim(f, (1, 1, 1)))
