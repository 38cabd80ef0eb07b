"""Linear algebra over Q and over polynomial rings.

Fraction-free elimination for ranks, null spaces and linear solves, small
determinant/adjugate/Pfaffian formulas, and degree-bounded ideal membership by
Macaulay matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from math import gcd, lcm
from typing import Iterable, Sequence

from gmpy2 import mpq

from .arith import (
    BITS,
    Polynomial,
    Rational,
    RingContext,
    _unpack,
    divide_with_remainder,
    exact_divide,
    to_rational,
)

PolyVector = tuple  # tuple[Polynomial, ...]


class DimensionMismatch(ValueError):
    pass


class NotSkew(ValueError):
    pass


class BoundTooSmall(ValueError):
    pass


class NotFoundUpToBound(LookupError):
    pass


# polynomial matrices

class PolyMatrix:
    """Dense matrix of polynomials over one ring."""

    __slots__ = ("ring", "rows")

    def __init__(self, ring: RingContext, rows: Iterable[Iterable]):
        self.ring = ring
        self.rows = tuple(tuple(ring.coerce(e) for e in row) for row in rows)
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise DimensionMismatch("ragged matrix")

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij):
        if isinstance(ij, int):
            return self.rows[ij]
        i, j = ij
        return self.rows[i][j]

    def __iter__(self):
        return iter(self.rows)

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in row) for row in self.rows)
        return f"PolyMatrix([{body}])"

    @property
    def T(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, zip(*self.rows))

    def col(self, j: int) -> PolyVector:
        return tuple(row[j] for row in self.rows)

    def map(self, fn) -> "PolyMatrix":
        return PolyMatrix(self.ring, ((fn(e) for e in row) for row in self.rows))

    def to_ring(self, ring: RingContext) -> "PolyMatrix":
        return PolyMatrix(ring, ((e.to_ring(ring) for e in row) for row in self.rows))

    def substitute(self, mapping, ring: RingContext | None = None) -> "PolyMatrix":
        target = ring or self.ring
        return PolyMatrix(target, ((e.substitute(mapping, target) for e in row) for row in self.rows))

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return PolyMatrix(self.ring, ((a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} - {other.shape}")
        return PolyMatrix(self.ring, ((a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __neg__(self):
        return self.map(lambda e: -e)

    def scale(self, c) -> "PolyMatrix":
        if isinstance(c, Polynomial):
            return self.map(lambda e: e * c)
        return self.map(lambda e: e.scale(c))

    def __matmul__(self, other):
        if isinstance(other, PolyMatrix):
            n, k = self.shape
            k2, m = other.shape
            if k != k2:
                raise DimensionMismatch(f"{self.shape} @ {other.shape}")
            cols = other.T.rows
            return PolyMatrix(self.ring, ((dot(row, col) for col in cols) for row in self.rows))
        vec = tuple(other)
        if len(vec) != self.shape[1]:
            raise DimensionMismatch(f"{self.shape} @ vector of length {len(vec)}")
        return tuple(dot(row, vec) for row in self.rows)

    def entries(self) -> list[Polynomial]:
        return [e for row in self.rows for e in row]

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries())

    @classmethod
    def identity(cls, ring: RingContext, n: int) -> "PolyMatrix":
        return cls(ring, ((1 if i == j else 0 for j in range(n)) for i in range(n)))


def vec(ring: RingContext, items: Iterable) -> PolyVector:
    return tuple(ring.coerce(e) for e in items)


def dot(u: Sequence[Polynomial], v: Sequence[Polynomial]) -> Polynomial:
    if len(u) != len(v):
        raise DimensionMismatch(f"dot of lengths {len(u)} and {len(v)}")
    total = None
    for a, b in zip(u, v):
        if a and b:
            t = a * b
            total = t if total is None else total + t
    if total is None:
        return u[0].ring.zero() if u else None
    return total


def vadd(u, v) -> PolyVector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v) -> PolyVector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, u) -> PolyVector:
    if isinstance(c, Polynomial):
        return tuple(c * a for a in u)
    return tuple(a.scale(c) for a in u)


def cross(u: Sequence[Polynomial], v: Sequence[Polynomial]) -> PolyVector:
    if len(u) != 3 or len(v) != 3:
        raise DimensionMismatch("cross product needs 3-vectors")
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def wedge2(M: PolyMatrix) -> PolyVector:
    """(|f2 f3; g2 g3|, -|f1 f3; g1 g3|, |f1 f2; g1 g2|) for rows f, g.

    A 3x2 matrix is handled through its transpose.
    """
    if M.shape == (3, 2):
        M = M.T
    if M.shape != (2, 3):
        raise DimensionMismatch(f"wedge2 needs a 2x3 or 3x2 matrix, got {M.shape}")
    return cross(M.rows[0], M.rows[1])


def det(M: PolyMatrix) -> Polynomial:
    n, m = M.shape
    if n != m:
        raise DimensionMismatch("det of a non-square matrix")
    a = M.rows
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    if n == 3:
        return (
            a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
        )
    total = M.ring.zero()
    for j in range(n):
        if a[0][j]:
            minor = PolyMatrix(M.ring, (row[:j] + row[j + 1:] for row in a[1:]))
            term = a[0][j] * det(minor)
            total = total + term if j % 2 == 0 else total - term
    return total


def adj(M: PolyMatrix) -> PolyMatrix:
    """Adjugate (transposed cofactor matrix), so M @ adj(M) = det(M) I."""
    n, m = M.shape
    if n != m:
        raise DimensionMismatch("adjugate of a non-square matrix")
    a = M.rows
    if n == 1:
        return PolyMatrix(M.ring, [[1]])
    if n == 2:
        return PolyMatrix(M.ring, [[a[1][1], -a[0][1]], [-a[1][0], a[0][0]]])
    cof = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = PolyMatrix(M.ring, (r[:j] + r[j + 1:] for k, r in enumerate(a) if k != i))
            d = det(minor)
            row.append(d if (i + j) % 2 == 0 else -d)
        cof.append(row)
    return PolyMatrix(M.ring, cof).T


def trace(M: PolyMatrix) -> Polynomial:
    n, m = M.shape
    if n != m:
        raise DimensionMismatch("trace of a non-square matrix")
    total = M.ring.zero()
    for i in range(n):
        total = total + M.rows[i][i]
    return total


def det_adj_trace(M: PolyMatrix) -> tuple[Polynomial, PolyMatrix, Polynomial]:
    return det(M), adj(M), trace(M)


def check_skew(S: PolyMatrix) -> None:
    n, m = S.shape
    if n != m:
        raise NotSkew("not square")
    for i in range(n):
        if S.rows[i][i]:
            raise NotSkew(f"nonzero diagonal entry at {i}")
        for j in range(i + 1, n):
            if S.rows[i][j] != -S.rows[j][i]:
                raise NotSkew(f"entries ({i},{j}) and ({j},{i}) are not opposite")


def skew_from_upper(ring: RingContext, upper: Sequence[Sequence]) -> PolyMatrix:
    """Skew matrix from its strict upper triangle given row by row."""
    n = len(upper) + 1
    rows = [[ring.zero()] * n for _ in range(n)]
    for i, r in enumerate(upper):
        if len(r) != n - 1 - i:
            raise DimensionMismatch("upper triangle rows have wrong lengths")
        for k, e in enumerate(r):
            j = i + 1 + k
            e = ring.coerce(e)
            rows[i][j] = e
            rows[j][i] = -e
    return PolyMatrix(ring, rows)


def pfaffian(S: PolyMatrix) -> Polynomial:
    check_skew(S)
    return _pf(S.rows, list(range(S.shape[0])), S.ring)


def _pf(a, idx, ring):
    if not idx:
        return ring.one()
    if len(idx) % 2:
        return ring.zero()
    i = idx[0]
    total = ring.zero()
    for k, j in enumerate(idx[1:]):
        if a[i][j]:
            rest = [t for t in idx[1:] if t != j]
            term = a[i][j] * _pf(a, rest, ring)
            total = total + term if k % 2 == 0 else total - term
    return total


def pfaffians_4x4(S: PolyMatrix) -> tuple[Polynomial, ...]:
    """The five principal 4x4 Pfaffians of a 5x5 skew matrix; the one omitting
    index i carries sign (-1)^(i+1), counting from 1."""
    if S.shape != (5, 5):
        raise DimensionMismatch("need a 5x5 skew matrix")
    check_skew(S)
    out = []
    for i in range(5):
        idx = [j for j in range(5) if j != i]
        p = _pf(S.rows, idx, S.ring)
        out.append(p if i % 2 == 0 else -p)
    return tuple(out)


def equal_up_to_scalar(f: Polynomial, g: Polynomial) -> bool:
    if f.is_zero() or g.is_zero():
        return f.is_zero() and g.is_zero()
    return f.monic() == g.monic()


# exact linear algebra over Q

def _integer_row(row: Sequence) -> list[int]:
    row = [to_rational(v) for v in row]
    den = 1
    for v in row:
        den = lcm(den, int(v.denominator))
    return [int(v * den) for v in row]


def bareiss_echelon(M: Sequence[Sequence]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form of a rational matrix.

    Rows are first scaled to integers; every intermediate entry is then an
    integer minor. Returns the echelon rows and the pivot columns.
    """
    A = [_integer_row(r) for r in M]
    if not A:
        return [], []
    nrows, ncols = len(A), len(A[0])
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        pr = A[r]
        piv = pr[c]
        for i in range(r + 1, nrows):
            row = A[i]
            f = row[c]
            for j in range(c + 1, ncols):
                row[j] = (piv * row[j] - f * pr[j]) // prev
            row[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return A[:r], pivots


def rank(M: Sequence[Sequence]) -> int:
    return len(bareiss_echelon(M)[1])


def rref(M: Sequence[Sequence]) -> tuple[list[list[Rational]], list[int]]:
    E, piv = bareiss_echelon(M)
    R = [[mpq(v) for v in row] for row in E]
    for k in range(len(piv) - 1, -1, -1):
        c = piv[k]
        inv = 1 / R[k][c]
        R[k] = [v * inv for v in R[k]]
        for i in range(k):
            f = R[i][c]
            if f:
                R[i] = [a - f * b for a, b in zip(R[i], R[k])]
    return R, piv


def nullspace(M: Sequence[Sequence], ncols: int | None = None) -> list[list[Rational]]:
    """Basis of {v : M v = 0} over Q."""
    if not M:
        n = ncols or 0
        return [[mpq(int(i == j)) for i in range(n)] for j in range(n)]
    n = len(M[0])
    R, piv = rref(M)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [mpq(0)] * n
        v[f] = mpq(1)
        for k, c in enumerate(piv):
            v[c] = -R[k][f]
        basis.append(v)
    return basis


def solve_rational(A: Sequence[Sequence], b: Sequence) -> list[Rational] | None:
    """One solution of A x = b, or None if inconsistent."""
    aug = [list(r) + [bv] for r, bv in zip(A, b)]
    n = len(A[0]) if A else 0
    R, piv = rref(aug)
    if n in piv:
        return None
    x = [mpq(0)] * n
    for k, c in enumerate(piv):
        x[c] = R[k][n]
    return x


def integer_nullspace_basis(M: Sequence[Sequence], ncols: int) -> list[list[int]]:
    """Null space basis scaled to primitive integer vectors."""
    out = []
    for v in nullspace(M, ncols):
        den = 1
        for a in v:
            den = lcm(den, int(a.denominator))
        iv = [int(a * den) for a in v]
        g = 0
        for a in iv:
            g = gcd(g, a)
        out.append([a // g for a in iv] if g > 1 else iv)
    return out


def coefficient_matrix(polys: Sequence[Polynomial]) -> tuple[list[list[Rational]], list[int]]:
    monos = sorted({m for f in polys for m in f.terms})
    col = {m: i for i, m in enumerate(monos)}
    rows = []
    for f in polys:
        row = [mpq(0)] * len(monos)
        for m, c in f.terms.items():
            row[col[m]] = c
        rows.append(row)
    return rows, monos


def span_dimension(polys: Sequence[Polynomial]) -> int:
    """Dimension of the Q-span of the given polynomials."""
    polys = [f for f in polys if f]
    if not polys:
        return 0
    rows, _ = coefficient_matrix(polys)
    return rank(rows)


def linear_combination(target: Polynomial, polys: Sequence[Polynomial]) -> list[Rational] | None:
    """Rational c with sum c_i polys_i == target, or None."""
    if not polys:
        return [] if target.is_zero() else None
    rows, monos = coefficient_matrix(list(polys) + [target])
    A = [list(col) for col in zip(*rows[:-1])]
    b = rows[-1]
    return solve_rational(A, b)


# linear systems over a polynomial ring

def poly_bareiss(M: Sequence[Sequence[Polynomial]], ncols: int | None = None) -> tuple[list[list[Polynomial]], list[int]]:
    """Fraction-free echelon form over a polynomial ring (entries stay polynomial
    because every division by the previous pivot is exact)."""
    A = [list(r) for r in M]
    if not A:
        return [], []
    nrows = len(A)
    ncols = ncols if ncols is not None else len(A[0])
    ring = A[0][0].ring
    prev = ring.one()
    r = 0
    pivots = []
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        pr = A[r]
        piv = pr[c]
        for i in range(r + 1, nrows):
            row = A[i]
            f = row[c]
            for j in range(c + 1, len(row)):
                num = piv * row[j] - f * pr[j]
                row[j] = num if prev == 1 else exact_divide(num, prev)
            row[c] = ring.zero()
        prev = piv
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return A[:r], pivots


def poly_rank(M: Sequence[Sequence[Polynomial]]) -> int:
    """Rank over the fraction field of the polynomial ring."""
    return len(poly_bareiss(M)[1])


# principal ideals

def reduce_mod_principal(f: Polynomial, g: Polynomial) -> Polynomial:
    """Normal form of f modulo the single polynomial g (grevlex division)."""
    return divide_with_remainder(f, g)[1]


# homogeneity gradings

def grading_lattice(polys: Iterable[Polynomial], nvars: int) -> list[list[int]]:
    """Integer basis of the weight vectors making every polynomial homogeneous."""
    constraints = set()
    for f in polys:
        ms = list(f.terms)
        if len(ms) < 2:
            continue
        base = _unpack(ms[0], nvars)
        for m in ms[1:]:
            e = _unpack(m, nvars)
            d = tuple(a - b for a, b in zip(e, base))
            if any(d):
                # store up to sign
                first = next(v for v in d if v)
                constraints.add(d if first > 0 else tuple(-v for v in d))
    rows = [list(c) for c in sorted(constraints)]
    if rows:
        E, _ = bareiss_echelon(rows)
        rows = E
    return integer_nullspace_basis(rows, nvars)


# degree-bounded ideal membership

@dataclass
class MembershipCertificate:
    """Cofactors with sum(c_i * g_i) == target, or ``cofactors is None`` when
    no certificate exists with deg(c_i * g_i) <= degree_bound."""

    target: Polynomial
    generators: tuple
    degree_bound: int
    cofactors: tuple | None
    unknowns: int = 0
    slices: int = 0
    bound_kind: str = "product"

    @property
    def found(self) -> bool:
        return self.cofactors is not None

    def verify(self) -> bool:
        if self.cofactors is None:
            return False
        total = self.target.ring.zero()
        for c, g in zip(self.cofactors, self.generators):
            if c:
                total = total + c * g
        return total == self.target

    def to_json(self) -> dict:
        return {
            "target": str(self.target),
            "degree_bound": self.degree_bound,
            "bound_kind": self.bound_kind,
            "found": self.found,
            "cofactors": None if self.cofactors is None else [str(c) for c in self.cofactors],
        }


class _SparseEchelon:
    """Incremental fraction-free elimination on integer rows stored as dicts.

    Columns are ints; a pivot row's pivot is its largest column. Right-hand
    sides use negative column ids so they never become pivots.
    """

    def __init__(self):
        self.pivots: dict[int, dict[int, int]] = {}

    def insert(self, row: dict[int, int]) -> dict[int, int] | None:
        """Reduce and store. Returns the leftover row if it only has RHS
        columns (an inconsistency witness), else None."""
        row = {k: v for k, v in row.items() if v}
        while row:
            c = max(row)
            if c < 0:
                return row
            p = self.pivots.get(c)
            if p is None:
                g = 0
                for v in row.values():
                    g = gcd(g, v)
                if g > 1:
                    row = {k: v // g for k, v in row.items()}
                self.pivots[c] = row
                return None
            a, b = p[c], row[c]
            ga = gcd(a, b)
            ma, mb = a // ga, b // ga
            new = {k: v * ma for k, v in row.items()}
            for k, v in p.items():
                nv = new.get(k, 0) - v * mb
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            g = 0
            for v in new.values():
                g = gcd(g, v)
                if g == 1:
                    break
            if g > 1:
                new = {k: v // g for k, v in new.items()}
            row = new
        return None

    def solve(self, rhs_col: int) -> dict[int, Rational]:
        sol: dict[int, Rational] = {}
        for c in sorted(self.pivots):
            p = self.pivots[c]
            acc = mpq(p.get(rhs_col, 0))
            for k, v in p.items():
                if 0 <= k < c and k in sol:
                    acc -= v * sol[k]
            val = acc / p[c]
            if val:
                sol[c] = val
        return sol


def _monomials_up_to(nvars_used: Sequence[int], max_deg: int, ring_nvars: int) -> list[int]:
    out = [0]
    for d in range(1, max_deg + 1):
        for combo in combinations_with_replacement(nvars_used, d):
            m = 0
            for i in combo:
                m += 1 << (BITS * i)
            out.append(m)
    return out


def macaulay_membership_many(
    targets: Sequence[Polynomial],
    generators: Sequence[Polynomial],
    degree_bound: int = 4,
    bound_kind: str = "product",
) -> list[MembershipCertificate]:
    """Degree-bounded membership of each target in the ideal of the generators.

    Searches cofactors c_i with deg(c_i * g_i) <= degree_bound, or with
    deg(c_i) <= degree_bound when ``bound_kind == "cofactor"``. The Macaulay
    matrix is split along every grading for which all generators are
    homogeneous; each graded piece is an independent exact linear system, so
    this finds a certificate exactly when the full Macaulay system has one.
    """
    gens = tuple(generators)
    if not targets:
        return []
    ring = targets[0].ring
    if bound_kind not in ("product", "cofactor"):
        raise ValueError("bound_kind is 'product' or 'cofactor'")
    if bound_kind == "product":
        for t in targets:
            if t.degree() > degree_bound:
                raise BoundTooSmall(f"degree bound {degree_bound} below target degree {t.degree()}")
        room = {i: degree_bound - g.degree() for i, g in enumerate(gens) if g}
    else:
        if degree_bound < 0:
            raise BoundTooSmall("cofactor degree bound must be non-negative")
        room = {i: degree_bound for i, g in enumerate(gens) if g}
    n = ring.nvars
    live = [(i, g) for i, g in enumerate(gens) if g and room[i] >= 0]
    used_mask = 0
    for g in [g for _, g in live] + list(targets):
        for m in g.terms:
            used_mask |= m
    used = [i for i in range(n) if (used_mask >> (BITS * i)) & 0xFF]

    W = grading_lattice([g for _, g in live], n)

    def wdeg(m: int) -> tuple:
        e = _unpack(m, n)
        return tuple(sum(w[i] * e[i] for i in used) for w in W)

    gen_w = {i: wdeg(next(iter(g.terms))) for i, g in live}

    mono_cache: dict[int, dict[tuple, list[int]]] = {}

    def cofactor_monos(k: int) -> dict[tuple, list[int]]:
        if k not in mono_cache:
            buckets: dict[tuple, list[int]] = {}
            for m in _monomials_up_to(used, k, n):
                buckets.setdefault(wdeg(m), []).append(m)
            mono_cache[k] = buckets
        return mono_cache[k]

    # group target components by multidegree
    comps: dict[tuple, dict[int, Polynomial]] = {}
    for ti, t in enumerate(targets):
        for m, c in t.terms.items():
            comps.setdefault(wdeg(m), {}).setdefault(ti, {})[m] = c

    results: list[dict[int, dict[int, Rational]] | None] = [dict() for _ in targets]
    unknown_total = 0
    for delta, parts in comps.items():
        columns = []
        for i, g in live:
            need = tuple(a - b for a, b in zip(delta, gen_w[i]))
            for m in cofactor_monos(room[i]).get(need, ()):
                columns.append((i, m))
        unknown_total += len(columns)
        # equations: one per monomial
        eqs: dict[int, dict[int, int]] = {}
        col_den: list[int] = []
        for ci, (i, m) in enumerate(columns):
            g = gens[i]
            den = 1
            for c in g.terms.values():
                den = lcm(den, int(c.denominator))
            col_den.append(den)
            for gm, gc in g.terms.items():
                eqs.setdefault(gm + m, {})[ci] = int(gc * den)
        rhs_ids = {ti: -(k + 1) for k, ti in enumerate(sorted(parts))}
        for ti, terms in parts.items():
            den = 1
            for c in terms.values():
                den = lcm(den, int(c.denominator))
            for m, c in terms.items():
                eqs.setdefault(m, {})[rhs_ids[ti]] = int(c * den)
            parts[ti] = den  # remember target scaling
        ech = _SparseEchelon()
        bad: set[int] = set()
        for row in eqs.values():
            left = ech.insert(row)
            if left:
                bad.update(k for k in left)
        for ti, den in parts.items():
            rid = rhs_ids[ti]
            if results[ti] is None:
                continue
            if rid in bad:
                results[ti] = None
                continue
            sol = ech.solve(rid)
            acc = results[ti]
            for ci, val in sol.items():
                i, m = columns[ci]
                coeff = val * col_den[ci] / den
                acc.setdefault(i, {})
                acc[i][m] = acc[i].get(m, 0) + coeff

    out = []
    for ti, t in enumerate(targets):
        res = results[ti]
        if res is None:
            out.append(MembershipCertificate(t, gens, degree_bound, None, unknown_total, len(comps), bound_kind))
            continue
        cof = []
        for i in range(len(gens)):
            terms = {m: c for m, c in res.get(i, {}).items() if c}
            cof.append(Polynomial(ring, terms))
        cert = MembershipCertificate(t, gens, degree_bound, tuple(cof), unknown_total, len(comps), bound_kind)
        if not cert.verify():
            raise AssertionError("membership certificate failed re-expansion")
        out.append(cert)
    return out


def macaulay_membership(target: Polynomial, generators: Sequence[Polynomial], degree_bound: int = 4,
                        bound_kind: str = "product") -> MembershipCertificate:
    return macaulay_membership_many([target], generators, degree_bound, bound_kind)[0]
