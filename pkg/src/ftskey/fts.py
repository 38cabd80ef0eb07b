"""Freudenthal triple systems built from a pair of 3x3 matrices (P, Q).

The space is W = Q e_s + Q e_t + V_x + V_y with V_x, V_y three-dimensional.
The x-side sharp is tP x cross tQ x (a vector of V_y), the y-side sharp is
P y cross Q y (a vector of V_x). The cubic norms and the bilinear trace are
recovered from the requirement that sharp(sharp(x)) = N_x(x) x and that the
derivatives of the norms are traced against the sharps.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from functools import cached_property
from itertools import combinations, permutations
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

from .arith import BITS, NotDivisible, _unpack, Polynomial, Rational, RingContext, exact_divide, to_rational
from .linalg import (
    PolyMatrix,
    adj,
    coefficient_matrix,
    cross,
    det,
    dot,
    macaulay_membership_many,
    poly_rank,
    rank,
    solve_rational,
    span_dimension,
    vadd,
    vscale,
    vsub,
)
from .reports import FAIL, PASS, CheckFailure, CheckResult, EquationSystem, result

X_NAMES = ("x1", "x2", "x3")
Y_NAMES = ("y1", "y2", "y3")
POINT_NAMES = ("s", "t") + X_NAMES + Y_NAMES


class DegenerateTrace(ValueError):
    """The linear system for the bilinear trace does not pin it down."""

    def __init__(self, dimension: int):
        super().__init__(f"bilinear trace not unique: solution space of dimension {dimension}")
        self.dimension = dimension


class InconsistentDivision(ValueError):
    pass


class AxiomViolation(CheckFailure):
    pass


class IdentityViolation(CheckFailure):
    pass


class BadProbe(ValueError):
    pass


# points of W

@dataclass(frozen=True)
class FtsPoint:
    s: Polynomial
    t: Polynomial
    x: tuple
    y: tuple

    @property
    def ring(self) -> RingContext:
        return self.s.ring

    def vector(self) -> tuple:
        return (self.s, self.t) + tuple(self.x) + tuple(self.y)

    @classmethod
    def from_vector(cls, v: Sequence[Polynomial]) -> "FtsPoint":
        v = tuple(v)
        if len(v) != 8:
            raise ValueError("a point of W has 8 coordinates")
        return cls(v[0], v[1], v[2:5], v[5:8])

    @classmethod
    def make(cls, ring: RingContext, s=0, t=0, x=(0, 0, 0), y=(0, 0, 0)) -> "FtsPoint":
        c = ring.coerce
        return cls(c(s), c(t), tuple(c(e) for e in x), tuple(c(e) for e in y))

    @classmethod
    def symbolic(cls, ring: RingContext, tag: str = "") -> "FtsPoint":
        """Point whose coordinates are the variables named by ``point_names(tag)``."""
        return cls.from_vector([ring.var(n) for n in point_names(tag)])

    @classmethod
    def basis(cls, ring: RingContext, i: int) -> "FtsPoint":
        return cls.from_vector([ring.one() if j == i else ring.zero() for j in range(8)])

    def __add__(self, other: "FtsPoint") -> "FtsPoint":
        return FtsPoint.from_vector(vadd(self.vector(), other.vector()))

    def __sub__(self, other: "FtsPoint") -> "FtsPoint":
        return FtsPoint.from_vector(vsub(self.vector(), other.vector()))

    def __neg__(self):
        return FtsPoint.from_vector(tuple(-a for a in self.vector()))

    def scale(self, c) -> "FtsPoint":
        return FtsPoint.from_vector(vscale(c, self.vector()))

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.vector())

    def substitute(self, mapping, ring=None) -> "FtsPoint":
        return FtsPoint.from_vector([a.substitute(mapping, ring) for a in self.vector()])

    def residual_terms(self) -> int:
        return sum(len(a) for a in self.vector())

    def __str__(self):
        return "(" + ", ".join(str(a) for a in self.vector()) + ")"


def point_names(tag: str = "") -> tuple[str, ...]:
    if not tag:
        return POINT_NAMES
    return tuple(f"{n}_{tag}" for n in POINT_NAMES)


def vec_names(prefix: str, tag: str) -> tuple[str, ...]:
    return tuple(f"{prefix}{i}_{tag}" for i in (1, 2, 3))


# the system

class FtsSystem:
    """An FTS on W given by (P, Q), its norms, trace matrix and cube formula.

    ``ring`` holds s, t, the parameters of P and Q, x1..x3 and y1..y3. Points
    may live in any ring containing these names, see ``over``.
    """

    def __init__(self, ring, P, Q, Nx, Ny, beta, name="fts"):
        self.ring = ring
        self.P = P
        self.Q = Q
        self.Nx = Nx
        self.Ny = Ny
        self.beta = beta
        self.name = name
        self._over: dict[RingContext, FtsSystem] = {}

    @cached_property
    def dbeta(self) -> Polynomial:
        return det(self.beta)

    @property
    def parameters(self) -> tuple[str, ...]:
        return tuple(n for n in self.ring.names if n not in POINT_NAMES)

    def is_rational(self) -> bool:
        return all(e.is_constant() for e in self.P.entries() + self.Q.entries())

    def with_norms(self, Nx=None, Ny=None) -> "FtsSystem":
        """Same data with the norms replaced (for negative controls)."""
        return FtsSystem(self.ring, self.P, self.Q, Nx if Nx is not None else self.Nx,
                         Ny if Ny is not None else self.Ny, self.beta, self.name + "*")

    def over(self, ring: RingContext) -> "FtsSystem":
        """The same system with all data moved into a larger ring."""
        if ring == self.ring:
            return self
        cached = self._over.get(ring)
        if cached is None:
            missing = [n for n in self.ring.names if n not in ring]
            if missing:
                raise ValueError(f"ring lacks {missing}")
            cached = FtsSystem(ring, self.P.to_ring(ring), self.Q.to_ring(ring), self.Nx.to_ring(ring),
                               self.Ny.to_ring(ring), self.beta.to_ring(ring), self.name)
            cached._base = self
            self._over[ring] = cached
        return cached

    def working_ring(self, extra: Iterable[str]) -> RingContext:
        return self.ring.extend(extra)

    # cubic structure
    def sharp_x(self, x: Sequence[Polynomial]) -> tuple:
        return cross(self.P.T @ x, self.Q.T @ x)

    def sharp_y(self, y: Sequence[Polynomial]) -> tuple:
        return cross(self.P @ y, self.Q @ y)

    def sharp(self, v, side: str) -> tuple:
        if side == "x":
            return self.sharp_x(v)
        if side == "y":
            return self.sharp_y(v)
        raise ValueError("side is 'x' or 'y'")

    def bisharp(self, a, b, side: str) -> tuple:
        """(a+b)# - a# - b# on the given side."""
        if side == "x":
            Pa, Pb, Qa, Qb = self.P.T @ a, self.P.T @ b, self.Q.T @ a, self.Q.T @ b
        elif side == "y":
            Pa, Pb, Qa, Qb = self.P @ a, self.P @ b, self.Q @ a, self.Q @ b
        else:
            raise ValueError("side is 'x' or 'y'")
        return vadd(cross(Pa, Qb), cross(Pb, Qa))

    def b(self, x: Sequence[Polynomial], y: Sequence[Polynomial]) -> Polynomial:
        """The bilinear trace tx B y."""
        return dot(x, self.beta @ y)

    def norm_x(self, x: Sequence[Polynomial]) -> Polynomial:
        return self.Nx.substitute(dict(zip(X_NAMES, x)), x[0].ring)

    def norm_y(self, y: Sequence[Polynomial]) -> Polynomial:
        return self.Ny.substitute(dict(zip(Y_NAMES, y)), y[0].ring)

    def _lift(self, p: FtsPoint) -> "FtsSystem":
        return self.over(p.ring)

    def cube(self, p: FtsPoint) -> FtsPoint:
        f = self._lift(p)
        s, t, x, y = p.s, p.t, p.x, p.y
        bxy = f.b(x, y)
        xs = f.sharp_x(x)
        ys = f.sharp_y(y)
        nx = f.norm_x(x)
        ny = f.norm_y(y)
        st_b = s * t - bxy
        es = -(s * s * t) + s * bxy - 2 * ny
        et = s * t * t - t * bxy + 2 * nx
        vx = vadd(vadd(vscale(st_b, x), vscale(2, f.bisharp(xs, y, "y"))), vscale(-2 * t, ys))
        vy = vadd(vadd(vscale(-st_b, y), vscale(-2, f.bisharp(x, ys, "x"))), vscale(2 * s, xs))
        return FtsPoint(es, et, vx, vy)

    @cached_property
    def structure_tensor(self) -> dict[tuple[int, int], list[tuple[int, int, Polynomial]]]:
        """Coefficients of the symmetric trilinear product on the basis of W.

        Obtained by linearizing the cube formula on basis vectors with the
        inclusion-exclusion rule, so triple(p, p, p) == cube(p) by design.
        Keyed by (i, j); values list (k, component, coefficient).
        """
        R = self.ring
        cache: dict[tuple[int, ...], tuple] = {}

        def C(idx: tuple[int, ...]) -> tuple:
            key = tuple(sorted(idx))
            if key not in cache:
                v = [R.zero()] * 8
                for i in key:
                    v[i] = v[i] + 1
                cache[key] = self.cube(FtsPoint.from_vector(v)).vector()
            return cache[key]

        tensor: dict[tuple[int, int], list] = {}
        for i, j, k in ((i, j, k) for i in range(8) for j in range(i, 8) for k in range(j, 8)):
            parts = [
                (C((i, j, k)), 1), (C((i, j)), -1), (C((i, k)), -1), (C((j, k)), -1),
                (C((i,)), 1), (C((j,)), 1), (C((k,)), 1),
            ]
            comps = []
            for m in range(8):
                total = R.zero()
                for vecv, sgn in parts:
                    total = total + vecv[m] if sgn > 0 else total - vecv[m]
                comps.append(total.scale(mpq(1, 6)))
            entries = [(m, c) for m, c in enumerate(comps) if c]
            if not entries:
                continue
            for a, b_, c_ in set(permutations((i, j, k))):
                tensor.setdefault((a, b_), []).extend((c_, m, val) for m, val in entries)
        return tensor

    def _tensor_in(self, ring: RingContext):
        base = getattr(self, "_base", self)
        if ring == base.ring:
            return base.structure_tensor
        cache = base.__dict__.setdefault("_tensor_cache", {})
        if ring not in cache:
            cache[ring] = {
                key: [(k, m, c.to_ring(ring)) for k, m, c in lst]
                for key, lst in base.structure_tensor.items()
            }
        return cache[ring]

    def triple(self, p1: FtsPoint, p2: FtsPoint, p3: FtsPoint) -> FtsPoint:
        """Symmetric trilinear product with triple(p, p, p) == cube(p)."""
        ring = p1.ring
        T = self._tensor_in(ring)
        v1, v2, v3 = p1.vector(), p2.vector(), p3.vector()
        out = [ring.zero()] * 8
        for (i, j), entries in T.items():
            a, b = v1[i], v2[j]
            if not a or not b:
                continue
            lin = [None] * 8
            for k, m, c in entries:
                w = v3[k]
                if not w:
                    continue
                term = w.scale(c.constant_value()) if c.is_constant() else w * c
                lin[m] = term if lin[m] is None else lin[m] + term
            if any(l is not None for l in lin):
                ab = a * b
                for m in range(8):
                    if lin[m] is not None:
                        out[m] = out[m] + ab * lin[m]
        return FtsPoint.from_vector(out)

    def triple_by_linearization(self, p1: FtsPoint, p2: FtsPoint, p3: FtsPoint) -> FtsPoint:
        """Reference form: inclusion-exclusion of cubes, divided by 6."""
        C = self.cube
        total = (C(p1 + p2 + p3) - C(p1 + p2) - C(p1 + p3) - C(p2 + p3)
                 + C(p1) + C(p2) + C(p3))
        return total.scale(mpq(1, 6))

    def omega(self, p: FtsPoint, q: FtsPoint) -> Polynomial:
        f = self._lift(p)
        return f.b(p.x, q.y) - f.b(q.x, p.y) + p.s * q.t - q.s * p.t

    def quartic(self, p: FtsPoint) -> Polynomial:
        """8(b(y#, x#) - s N_x - t N_y) - 2(st - b(x, y))^2."""
        f = self._lift(p)
        xs, ys = f.sharp_x(p.x), f.sharp_y(p.y)
        lin = f.b(ys, xs) - p.s * f.norm_x(p.x) - p.t * f.norm_y(p.y)
        q = p.s * p.t - f.b(p.x, p.y)
        return lin.scale(8) - (q * q).scale(2)

    def delta(self, x, y, probe, side: str) -> tuple:
        """Delta_x(x, y; probe) = -1/3 b(x,y) probe - b(probe,y) x + (x # probe) # y
        for side 'x'; mirrored for side 'y'."""
        f = self.over(x[0].ring)
        bxy = f.b(x, y)
        if side == "x":
            inner = f.bisharp(x, probe, "x")
            outer = f.bisharp(inner, y, "y")
            return vadd(vadd(vscale(bxy.scale(mpq(-1, 3)), probe), vscale(-f.b(probe, y), x)), outer)
        if side == "y":
            inner = f.bisharp(y, probe, "y")
            outer = f.bisharp(inner, x, "x")
            return vadd(vadd(vscale(bxy.scale(mpq(-1, 3)), probe), vscale(-f.b(x, probe), y)), outer)
        raise ValueError("side is 'x' or 'y'")

    def delta_by_triple(self, x, y, probe, side: str) -> tuple:
        """The same map written through the triple product."""
        R = x[0].ring
        f = self.over(R)
        z = (R.zero(),) * 3
        bxy = f.b(x, y)
        X = FtsPoint(R.zero(), R.zero(), tuple(x), z)
        Y = FtsPoint(R.zero(), R.zero(), z, tuple(y))
        if side == "x":
            Pr = FtsPoint(R.zero(), R.zero(), tuple(probe), z)
            tp = f.triple(X, Pr, Y).x
            return vadd(vadd(vscale(bxy.scale(mpq(1, 6)), probe), vscale(f.b(probe, y).scale(mpq(-1, 2)), x)),
                        vscale(3, tp))
        Pr = FtsPoint(R.zero(), R.zero(), z, tuple(probe))
        tp = f.triple(Y, Pr, X).y
        return vadd(vadd(vscale(bxy.scale(mpq(1, 6)), probe), vscale(f.b(x, probe).scale(mpq(-1, 2)), y)),
                    vscale(-3, tp))


# construction

def build_fts(P: PolyMatrix, Q: PolyMatrix, name: str = "fts") -> FtsSystem:
    """Norms and bilinear trace of the FTS attached to (P, Q).

    Raises InconsistentDivision when sharp(sharp(v)) is not a common multiple
    of v, and DegenerateTrace when the trace is not unique.
    """
    if P.shape != (3, 3) or Q.shape != (3, 3):
        raise ValueError("P and Q must be 3x3")
    clash = [n for n in P.ring.names if n in POINT_NAMES]
    if clash:
        raise ValueError(f"parameter ring uses reserved names {clash}")
    ring = RingContext(("s", "t") + P.ring.names + X_NAMES + Y_NAMES)
    P, Q = P.to_ring(ring), Q.to_ring(ring)
    x = tuple(ring.var(n) for n in X_NAMES)
    y = tuple(ring.var(n) for n in Y_NAMES)
    proto = FtsSystem(ring, P, Q, ring.zero(), ring.zero(), PolyMatrix.identity(ring, 3), name)
    xs = proto.sharp_x(x)
    ys = proto.sharp_y(y)
    Nx = _norm_from_double_sharp(proto.sharp_y(xs), x)
    Ny = _norm_from_double_sharp(proto.sharp_x(ys), y)
    B = _solve_trace(ring, Nx, Ny, xs, ys, x, y)
    return FtsSystem(ring, P, Q, Nx, Ny, B, name)


def _norm_from_double_sharp(lhs: tuple, v: tuple) -> Polynomial:
    quotients = []
    for comp, var in zip(lhs, v):
        try:
            quotients.append(exact_divide(comp, var))
        except NotDivisible:
            raise InconsistentDivision(f"double sharp is not a multiple of {var}") from None
    if not (quotients[0] == quotients[1] == quotients[2]):
        raise InconsistentDivision("componentwise quotients of the double sharp disagree")
    return quotients[0]


def _solve_trace(ring, Nx, Ny, xs, ys, x, y) -> PolyMatrix:
    """B with d/dx_i N_x = sum_l B[i][l] xs_l and d/dy_j N_y = sum_l ys_l B[l][j]."""
    dNx = [Nx.derivative(n) for n in X_NAMES]
    dNy = [Ny.derivative(n) for n in Y_NAMES]
    if all(len(_split_coeffs(c, X_NAMES + Y_NAMES)) == len(c) for v in (xs, ys) for c in v):
        return _solve_trace_rational(ring, dNx, dNy, xs, ys)
    return _solve_trace_symbolic(ring, dNx, dNy, xs, ys, x, y)


def _split_coeffs(f: Polynomial, names: Sequence[str]) -> dict[tuple, Polynomial]:
    """Map exponent pattern in ``names`` to the coefficient polynomial."""
    ring = f.ring
    idx = [ring.index[n] for n in names]
    n = ring.nvars
    parts: dict[tuple, dict] = {}
    for m, c in f.terms.items():
        e = _unpack(m, n)
        key = tuple(e[i] for i in idx)
        rest = m
        for i in idx:
            rest -= e[i] << (BITS * i)
        parts.setdefault(key, {})[rest] = c
    return {k: Polynomial(ring, v) for k, v in parts.items()}


def _trace_equations(dNx, dNy, xs, ys):
    """Rows (coefficient polys on the 9 unknowns B[i][l] at index 3i+l, rhs)."""
    rows = []
    for i in range(3):
        keys = set()
        split_l = [_split_coeffs(xs[l], X_NAMES) for l in range(3)]
        split_r = _split_coeffs(dNx[i], X_NAMES)
        for d in split_l + [split_r]:
            keys.update(d)
        for key in sorted(keys):
            coeffs = {3 * i + l: split_l[l].get(key) for l in range(3)}
            rows.append((coeffs, split_r.get(key)))
    for j in range(3):
        keys = set()
        split_l = [_split_coeffs(ys[l], Y_NAMES) for l in range(3)]
        split_r = _split_coeffs(dNy[j], Y_NAMES)
        for d in split_l + [split_r]:
            keys.update(d)
        for key in sorted(keys):
            coeffs = {3 * l + j: split_l[l].get(key) for l in range(3)}
            rows.append((coeffs, split_r.get(key)))
    return rows


def _solve_trace_rational(ring, dNx, dNy, xs, ys) -> PolyMatrix:
    rows = _trace_equations(dNx, dNy, xs, ys)
    A = []
    b = []
    for coeffs, rhs in rows:
        A.append([coeffs[k].constant_value() if coeffs.get(k) is not None else mpq(0) for k in range(9)])
        b.append(rhs.constant_value() if rhs is not None else mpq(0))
    r = rank(A)
    if r < 9:
        raise DegenerateTrace(9 - r)
    sol = solve_rational(A, b)
    if sol is None:
        raise InconsistentDivision("no bilinear trace matches both norms")
    return PolyMatrix(ring, [[sol[3 * i + l] for l in range(3)] for i in range(3)])


def _solve_trace_symbolic(ring, dNx, dNy, xs, ys, x, y) -> PolyMatrix:
    zero = ring.zero()
    # x-side: the 6x3 coefficient matrix of xs in the quadratic monomials of x
    def block(v, names):
        splits = [_split_coeffs(v[l], names) for l in range(3)]
        keys = sorted(set().union(*splits))
        return keys, [[splits[l].get(k, zero) for l in range(3)] for k in keys]

    keys_x, Cx = block(xs, X_NAMES)
    keys_y, Cy = block(ys, Y_NAMES)
    B = None
    if len(Cx) >= 3 and poly_rank(Cx) == 3:
        B = _solve_block(ring, Cx, keys_x, [_split_coeffs(d, X_NAMES) for d in dNx])
    elif len(Cy) >= 3 and poly_rank(Cy) == 3:
        Bt = _solve_block(ring, Cy, keys_y, [_split_coeffs(d, Y_NAMES) for d in dNy])
        B = Bt.T
    else:
        rows = _trace_equations(dNx, dNy, xs, ys)
        M = [[c.get(k) or zero for k in range(9)] for c, _ in rows]
        r = poly_rank(M)
        if r < 9:
            raise DegenerateTrace(9 - r)
        raise NotImplementedError("trace determined only jointly by both sides")
    for i in range(3):
        if dot(B.rows[i], xs) != dNx[i]:
            raise InconsistentDivision("x-side trace identity fails")
    for j in range(3):
        if dot(B.col(j), ys) != dNy[j]:
            raise InconsistentDivision("y-side trace identity fails")
    return B


def _solve_block(ring, C, keys, rhs_splits) -> PolyMatrix:
    zero = ring.zero()
    for rows in combinations(range(len(C)), 3):
        C3 = PolyMatrix(ring, [C[r] for r in rows])
        d = det(C3)
        if d:
            break
    A = adj(C3)
    out = []
    for i in range(3):
        r = [rhs_splits[i].get(keys[k], zero) for k in rows]
        num = A @ r
        try:
            out.append([exact_divide(v, d) for v in num])
        except NotDivisible:
            raise NotImplementedError("bilinear trace has non-polynomial entries") from None
    return PolyMatrix(ring, out)


def pq_from_rationals(P, Q, ring: RingContext | None = None) -> tuple[PolyMatrix, PolyMatrix]:
    ring = ring or RingContext(())
    return PolyMatrix(ring, P), PolyMatrix(ring, Q)


def diagonal_example() -> FtsSystem:
    """P = diag(2,-1,-1), Q = diag(1,-2,1): the norm -27 x1 x2 x3, B = 9 I."""
    P, Q = pq_from_rationals([[2, 0, 0], [0, -1, 0], [0, 0, -1]], [[1, 0, 0], [0, -2, 0], [0, 0, 1]])
    return build_fts(P, Q, "diagonal")


def random_pair(rng: random.Random, lo: int = -5, hi: int = 5, tries: int = 200) -> FtsSystem:
    """A rational (P, Q) with nonsingular trace matrix, drawn from rng."""
    for _ in range(tries):
        P = [[rng.randint(lo, hi) for _ in range(3)] for _ in range(3)]
        Q = [[rng.randint(lo, hi) for _ in range(3)] for _ in range(3)]
        try:
            f = build_fts(*pq_from_rationals(P, Q), name=f"random P={P} Q={Q}")
        except DegenerateTrace:
            continue
        if f.dbeta:
            return f
    raise RuntimeError("no nondegenerate pair found")


def specialize(fts: FtsSystem, values: Mapping[str, object]) -> FtsSystem:
    """Rebuild with the parameters of P and Q replaced by the given values."""
    params = [n for n in fts.ring.names if n not in POINT_NAMES and n not in values]
    R = RingContext(params)
    P = fts.P.substitute(values).to_ring(R)
    Q = fts.Q.substitute(values).to_ring(R)
    return build_fts(P, Q, fts.name)


def sample_parameters(fts: FtsSystem, rng: random.Random, lo=-5, hi=5, tries=200) -> FtsSystem:
    params = fts.parameters
    if not params:
        return fts
    for _ in range(tries):
        vals = {n: rng.randint(lo, hi) for n in params}
        try:
            g = specialize(fts, vals)
        except DegenerateTrace:
            continue
        if g.dbeta:
            return g
    raise RuntimeError("no nondegenerate specialization found")
