"""Axioms, identities, Peirce spectrum and the strictly regular locus of an FTS."""

from __future__ import annotations

import random
from itertools import permutations
from typing import Sequence

from gmpy2 import mpq

from .arith import Polynomial, RingContext, to_rational
from .fts import (
    POINT_NAMES,
    X_NAMES,
    Y_NAMES,
    AxiomViolation,
    BadProbe,
    FtsPoint,
    FtsSystem,
    IdentityViolation,
    point_names,
    sample_parameters,
    vec_names,
)
from .linalg import PolyMatrix, cross, macaulay_membership_many, span_dimension, vadd, vscale, vsub
from .reports import FAIL, PASS, CheckResult, EquationSystem, result


def _terms(v) -> int:
    if isinstance(v, Polynomial):
        return len(v)
    if isinstance(v, FtsPoint):
        return v.residual_terms()
    return sum(len(a) for a in v)


def _rename_blocks(f: Polynomial, perm: Sequence[str], tags: Sequence[str]) -> Polynomial:
    mapping = {}
    for src, dst in zip(tags, perm):
        for a, b in zip(point_names(src), point_names(dst)):
            mapping[a] = f.ring.var(b)
    return f.substitute(mapping)


def _prepare(fts: FtsSystem, mode: str, seed: int | None) -> FtsSystem:
    if mode == "sampled":
        return sample_parameters(fts, random.Random(seed))
    if mode != "symbolic":
        raise ValueError("mode is 'symbolic' or 'sampled'")
    return fts


def _finish(results: list[CheckResult], strict: bool, exc) -> list[CheckResult]:
    if strict:
        for r in results:
            if r.status == FAIL:
                raise exc(r.check, r.details or r.residual_terms)
    return results


# axioms

def axiom_check(fts: FtsSystem, mode: str = "symbolic", seed: int | None = None,
                strict: bool = False, pentagram: bool = True) -> list[CheckResult]:
    """The three FTS axioms and the pentagram formula, with symbolic points.

    In sampled mode the parameters of P and Q are first replaced by seeded
    random integers (the points stay symbolic).
    """
    f = _prepare(fts, mode, seed)
    tags = ("p1", "p2", "p3", "p4", "q")
    W = f.working_ring([n for t in tags for n in point_names(t)])
    p1, p2, p3, p4, q = (FtsPoint.symbolic(W, t) for t in tags)
    out = []

    base = f.triple(p1, p2, p3)
    worst = 0
    for a, b, c in permutations((p1, p2, p3)):
        worst = max(worst, _terms(f.triple(a, b, c) - base))
    out.append(result("A1 triple product symmetric", worst, seed))

    form = f.omega(base, p4)
    worst = 0
    for perm in permutations(tags[:4]):
        worst = max(worst, _terms(_rename_blocks(form, perm, tags[:4]) - form))
    r = result("A2 omega(triple, p) symmetric 4-linear", worst, seed, terms=len(form))
    if form.is_zero():
        r.status = FAIL
        r.details["reason"] = "form is identically zero"
    out.append(r)

    W2 = f.working_ring(point_names("p") + point_names("q"))
    p, qq = FtsPoint.symbolic(W2, "p"), FtsPoint.symbolic(W2, "q")
    cp = f.cube(p)
    lhs = f.triple(cp, p, qq).scale(6)
    rhs = FtsPoint.from_vector(vscale(f.omega(qq, p), cp.vector()))
    rhs = rhs + FtsPoint.from_vector(vscale(f.omega(qq, cp), p.vector()))
    out.append(result("A3 6 triple(cube p, p, q) = omega(q,p) cube p + omega(q, cube p) p",
                      _terms(lhs - rhs), seed))

    if pentagram:
        pts = (p1, p2, p3, p4)
        lhs = FtsPoint.from_vector([W.zero()] * 8)
        rhs = lhs
        for l in range(4):
            i, j, k = (pts[m] for m in range(4) if m != l)
            t3 = f.triple(i, j, k)
            lhs = lhs + f.triple(t3, pts[l], q)
            rhs = rhs + FtsPoint.from_vector(vscale(f.omega(q, pts[l]), t3.vector()))
            rhs = rhs + FtsPoint.from_vector(vscale(f.omega(q, t3), pts[l].vector()))
        out.append(result("pentagram formula", _terms(lhs.scale(6) - rhs), seed))
    return _finish(out, strict, AxiomViolation)


# identities

def _embed_x(R, x):
    z = (R.zero(),) * 3
    return FtsPoint(R.zero(), R.zero(), tuple(x), z)


def _embed_y(R, y):
    z = (R.zero(),) * 3
    return FtsPoint(R.zero(), R.zero(), z, tuple(y))


def identity_suite(fts: FtsSystem, strict: bool = False) -> list[CheckResult]:
    """Norm, sharp and trace relations that every FTS of this shape satisfies."""
    names = (X_NAMES + Y_NAMES + vec_names("x", "a") + vec_names("y", "a")
             + vec_names("x", "b") + ("s_p", "t_p") + point_names("q"))
    W = fts.working_ring(names)
    f = fts.over(W)
    v = W.var
    x = tuple(v(n) for n in X_NAMES)
    y = tuple(v(n) for n in Y_NAMES)
    xa = tuple(v(n) for n in vec_names("x", "a"))
    ya = tuple(v(n) for n in vec_names("y", "a"))
    xb = tuple(v(n) for n in vec_names("x", "b"))
    es = FtsPoint.basis(W, 0)
    et = FtsPoint.basis(W, 1)
    X, Y = _embed_x(W, x), _embed_y(W, y)
    xs, ys = f.sharp_x(x), f.sharp_y(y)
    Nx, Ny = f.norm_x(x), f.norm_y(y)
    half, third = mpq(1, 2), mpq(1, 3)
    out = []

    def add(name, residual):
        out.append(result(name, _terms(residual)))

    add("norm_x = 1/2 omega(e_s, x.x.x)", Nx - f.omega(es, f.triple(X, X, X)).scale(half))
    add("norm_y = 1/2 omega(e_t, y.y.y)", Ny - f.omega(et, f.triple(Y, Y, Y)).scale(half))
    add("x# = 3/2 x.x.e_s", vsub(xs, vscale(mpq(3, 2), f.triple(X, X, es).y)))
    add("y# = -3/2 y.y.e_t", vsub(ys, vscale(mpq(-3, 2), f.triple(Y, Y, et).x)))
    Xa, Ya = _embed_x(W, xa), _embed_y(W, ya)
    add("x # xa = 3 x.xa.e_s", vsub(f.bisharp(x, xa, "x"), vscale(3, f.triple(X, Xa, es).y)))
    add("y # ya = -3 y.ya.e_t", vsub(f.bisharp(y, ya, "y"), vscale(-3, f.triple(Y, Ya, et).x)))
    add("norm_x = 1/3 b(x, x#)", Nx - f.b(x, xs).scale(third))
    add("norm_y = 1/3 b(y#, y)", Ny - f.b(ys, y).scale(third))
    dx = {n: a for n, a in zip(X_NAMES, xa)}
    dy = {n: a for n, a in zip(Y_NAMES, ya)}
    add("d_xa norm_x = b(xa, x#)", Nx.directional_derivative(dx) - f.b(xa, xs))
    add("d_ya norm_y = b(y#, ya)", Ny.directional_derivative(dy) - f.b(ys, ya))
    add("(x#)# = norm_x x", vsub(f.sharp_y(xs), vscale(Nx, x)))
    add("(y#)# = norm_y y", vsub(f.sharp_x(ys), vscale(Ny, y)))

    # sharp squared through the product
    xxe = f.triple(X, X, es)
    lhs = f.triple(xxe, xxe, et)
    k = f.omega(f.triple(X, X, X), es).scale(mpq(4, 27))
    add("(x.x.e_s).(x.x.e_s).e_t = 4/27 omega(x.x.x, e_s) x", vsub(lhs.vector(), vscale(k, X.vector())))
    lhs = f.triple(X, X, Y)
    rhs = FtsPoint.from_vector(vsub(vscale(f.omega(X, Y).scale(-third), X.vector()),
                                    f.triple(xxe, et, Y).scale(3).vector()))
    add("x.x.y = -1/3 omega(x,y) x - 3 (x.x.e_s).e_t.y", lhs - rhs)

    Xs_pt = _embed_y(W, xs)
    Ys_pt = _embed_x(W, ys)
    bxy = f.b(x, y)
    add("x.x#.xa = 1/6 (b(xa, x#) x - norm_x xa)",
        vsub(f.triple(X, Xs_pt, Xa).x, vscale(mpq(1, 6), vsub(vscale(f.b(xa, xs), x), vscale(Nx, xa)))))
    add("x.x#.y = 1/6 (-b(x,y) x# + norm_x y)",
        vsub(f.triple(X, Xs_pt, Y).y, vscale(mpq(1, 6), vsub(vscale(Nx, y), vscale(bxy, xs)))))
    add("y.y#.x = 1/6 (b(x,y) y# - norm_y x)",
        vsub(f.triple(Y, Ys_pt, X).x, vscale(mpq(1, 6), vsub(vscale(bxy, ys), vscale(Ny, x)))))

    # Delta maps
    add("Delta_x by sharps = Delta_x by triple",
        vsub(f.delta(x, y, xa, "x"), f.delta_by_triple(x, y, xa, "x")))
    add("Delta_y by sharps = Delta_y by triple",
        vsub(f.delta(x, y, ya, "y"), f.delta_by_triple(x, y, ya, "y")))
    d1 = f.b(f.delta(x, y, xa, "x"), ya)
    d2 = f.b(xa, f.delta(x, y, ya, "y"))
    d3 = f.b(x, f.delta(xa, ya, y, "y"))
    add("b(Delta_x(x,y;xa), ya) = b(xa, Delta_y(x,y;ya))", d1 - d2)
    add("b(xa, Delta_y(x,y;ya)) = b(x, Delta_y(xa,ya;y))", d2 - d3)
    add("Delta_x(x, x#; xa) = 0", f.delta(x, xs, xa, "x"))
    add("Delta_x(y#, y; xa) = 0", f.delta(ys, y, xa, "x"))
    add("Delta_y(y#, y; ya) = 0", f.delta(ys, y, ya, "y"))
    add("Delta_y(x, x#; ya) = 0", f.delta(x, xs, ya, "y"))

    # quartic form and the strict regularity display
    p = FtsPoint.from_vector((W.var("s_p"), W.var("t_p")) + x + y)
    add("quartic(p) = omega(cube p, p)", f.quartic(p) - f.omega(f.cube(p), p))
    add("strict regularity display", _display_residual(f, W, x, y))
    return _finish(out, strict, IdentityViolation)


def _display_residual(f: FtsSystem, W: RingContext, x, y) -> FtsPoint:
    """3 p.p.q + omega(p,q) p against its expansion in sx - y#, ty - x#,
    st - b/3 and the Delta maps."""
    s, t = W.var("s_p"), W.var("t_p")
    q = FtsPoint.symbolic(W, "q")
    sq, tq, xq, yq = q.s, q.t, q.x, q.y
    p = FtsPoint(s, t, x, y)
    lhs = f.triple(p, p, q).scale(3) + FtsPoint.from_vector(vscale(f.omega(p, q), p.vector()))
    b = f.b(x, y)
    ex = vsub(vscale(s, x), f.sharp_y(y))   # s x - y#
    ey = vsub(vscale(t, y), f.sharp_x(x))   # t y - x#
    c3 = s * t * 3 - b
    c1 = s * t - b.scale(mpq(1, 3))
    es = -(sq * c3) + f.b(ex, yq).scale(2)
    et = c3 * tq - f.b(xq, ey).scale(2)
    vx = vadd(vadd(vscale(c1, xq), vscale(tq * 2, ex)),
              vadd(vscale(-2, f.bisharp(yq, ey, "y")), vscale(2, f.delta(x, y, xq, "x"))))
    vy = vadd(vadd(vscale(-c1, yq), vscale(sq * (-2), ey)),
              vadd(vscale(2, f.bisharp(xq, ex, "x")), vscale(-2, f.delta(x, y, yq, "y"))))
    return lhs - FtsPoint(es, et, vx, vy)


# Peirce decomposition

def _charpoly(M: list[list]) -> list:
    """Coefficients c_0..c_n of det(lambda I - M) (Faddeev-LeVerrier)."""
    n = len(M)
    I = [[mpq(int(i == j)) for j in range(n)] for i in range(n)]
    coeffs = [mpq(0)] * (n + 1)
    coeffs[n] = mpq(1)
    Mk = [[mpq(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # Mk = M (M_{k-1} + c_{n-k+1} I)
        tmp = [[Mk[i][j] + (coeffs[n - k + 1] if i == j else 0) for j in range(n)] for i in range(n)]
        Mk = [[sum(M[i][l] * tmp[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(Mk[i][i] for i in range(n)) / k
    return coeffs


def _rational_roots(coeffs: list) -> tuple[list, list]:
    """Rational roots with multiplicity, and the leftover coefficients."""
    from math import gcd, lcm

    def divisors(n):
        n = abs(n)
        out = set()
        d = 1
        while d * d <= n:
            if n % d == 0:
                out.update((d, n // d))
            d += 1
        return out

    poly = list(coeffs)
    roots = []
    while len(poly) > 1 and poly[0] == 0:
        roots.append(mpq(0))
        poly = poly[1:]
    changed = True
    while changed and len(poly) > 1:
        changed = False
        den = 1
        for c in poly:
            den = lcm(den, int(c.denominator))
        ints = [int(c * den) for c in poly]
        for p_ in divisors(ints[0]):
            for q_ in divisors(ints[-1]):
                for r in (mpq(p_, q_), mpq(-p_, q_)):
                    val = sum(c * r ** i for i, c in enumerate(poly))
                    if val == 0:
                        # synthetic division by (lambda - r)
                        n = len(poly) - 1
                        new = [mpq(0)] * n
                        new[n - 1] = poly[n]
                        for i in range(n - 1, 0, -1):
                            new[i - 1] = poly[i] + r * new[i]
                        poly = new
                        roots.append(r)
                        changed = True
                        break
                if changed:
                    break
            if changed:
                break
    return sorted(roots), poly


def peirce_operator(fts: FtsSystem) -> list[list]:
    """Matrix of p -> triple(e_s, e_t, p) on the basis (e_s, e_t, x, y)."""
    R = fts.ring
    es, et = FtsPoint.basis(R, 0), FtsPoint.basis(R, 1)
    cols = [fts.triple(es, et, FtsPoint.basis(R, j)).vector() for j in range(8)]
    return [[cols[j][i] for j in range(8)] for i in range(8)]


def peirce_spectrum(fts: FtsSystem) -> dict:
    """Exact eigenvalues (with multiplicity) of L = triple(e_s, e_t, .), and the
    residuals of its square against the Peirce relation."""
    L = peirce_operator(fts)
    if not all(e.is_constant() for row in L for e in row):
        raise ValueError("Peirce operator depends on parameters; specialize first")
    M = [[e.constant_value() for e in row] for row in L]
    roots, rest = _rational_roots(_charpoly(M))
    spectrum: dict = {}
    for r in roots:
        spectrum[r] = spectrum.get(r, 0) + 1

    W = fts.working_ring(point_names("p"))
    f = fts.over(W)
    p = FtsPoint.symbolic(W, "p")
    es, et = FtsPoint.basis(W, 0), FtsPoint.basis(W, 1)
    L2 = f.triple(es, et, f.triple(es, et, p))
    w_t, w_s = f.omega(p, et), f.omega(p, es)
    corrected = (FtsPoint.from_vector(vscale(w_t.scale(mpq(1, 12)), es.vector()))
                 - FtsPoint.from_vector(vscale(w_s.scale(mpq(1, 12)), et.vector()))
                 + p.scale(mpq(1, 36)))
    printed = (FtsPoint.from_vector(vscale(w_t.scale(mpq(1, 12)), es.vector()))
               - FtsPoint.from_vector(vscale(w_t.scale(mpq(1, 12)), et.vector()))
               + p.scale(mpq(1, 36)))
    return {
        "spectrum": spectrum,
        "unresolved_degree": len(rest) - 1,
        "L_squared_residual": (L2 - corrected).residual_terms(),
        "L_squared_residual_omega_pe_t_twice": (L2 - printed).residual_terms(),
    }


# strictly regular locus

def streg_equations(fts: FtsSystem, rescale: tuple | None = None, name: str = "streg") -> EquationSystem:
    """The nine equations sx = Py x Qy, ty = tPx x tQx, st = b(x,y)/3,
    tx P y = 0 and tx Q y = 0.

    ``rescale = (mu, nu)`` expresses them in the coordinates of an FTS whose
    sharps are mu and nu times the cross products, i.e. s -> s/mu, t -> t/nu.
    """
    R = fts.ring
    v = R.var
    s, t = v("s"), v("t")
    x = tuple(v(n) for n in X_NAMES)
    y = tuple(v(n) for n in Y_NAMES)
    ys, xs = fts.sharp_y(y), fts.sharp_x(x)
    polys = [s * x[i] - ys[i] for i in range(3)]
    polys += [t * y[i] - xs[i] for i in range(3)]
    polys.append(s * t - fts.b(x, y).scale(mpq(1, 3)))
    from .linalg import dot
    polys.append(dot(x, fts.P @ y))
    polys.append(dot(x, fts.Q @ y))
    labels = ("sx1", "sx2", "sx3", "ty1", "ty2", "ty3", "st", "xPy", "xQy")
    if rescale is not None:
        mu, nu = (to_rational(c) for c in rescale)
        if not mu or not nu:
            raise ValueError("rescale factors must be nonzero")
        sub = {"s": s.scale(1 / mu), "t": t.scale(1 / nu)}
        polys = [f.substitute(sub) for f in polys]
    return EquationSystem(name, R, labels, tuple(polys))


def streg_consistency(fts: FtsSystem, degree_bound: int = 4, drop: Sequence[str] = ()) -> CheckResult:
    """Every coefficient of 3 p.p.q + omega(p,q) p (as a linear form in q)
    lies in the ideal of the nine equations, up to the degree bound."""
    eqs = streg_equations(fts).drop(drop)
    W = fts.working_ring(point_names("q"))
    f = fts.over(W)
    p = FtsPoint.symbolic(W)
    q = FtsPoint.symbolic(W, "q")
    v = f.triple(p, p, q).scale(3) + FtsPoint.from_vector(vscale(f.omega(p, q), p.vector()))
    targets, where = [], []
    for ci, comp in enumerate(v.vector()):
        for qn in point_names("q"):
            c = comp.derivative(qn)
            if c:
                targets.append(c.to_ring(fts.ring))
                where.append(f"{POINT_NAMES[ci]}/{qn}")
    certs = macaulay_membership_many(targets, list(eqs.polys), degree_bound)
    missing = [w for w, c in zip(where, certs) if not c.found]
    components = len(v.vector()) * len(point_names("q"))
    r = result("strict regularity coefficients in the ideal", len(missing),
               components=components, identically_zero=components - len(targets),
               targets=len(targets), degree_bound=degree_bound, dropped=list(drop))
    if missing:
        r.details["not_certified"] = missing
    return r


def delta_span_dim(fts: FtsSystem, probe: Sequence) -> int:
    """Dimension of the span of the entries of Delta_x(x, y; probe) for fixed probe."""
    probe = [to_rational(c) for c in probe]
    if len(probe) != 3 or not any(probe):
        raise BadProbe("probe must be a nonzero rational 3-vector")
    R = fts.ring
    x = tuple(R.var(n) for n in X_NAMES)
    y = tuple(R.var(n) for n in Y_NAMES)
    d = fts.delta(x, y, tuple(R.const(c) for c in probe), "x")
    return span_dimension(list(d))


def delta_span_matches(fts: FtsSystem, probe: Sequence) -> bool:
    """Whether the Delta_x entries span exactly <tx P y, tx Q y>."""
    R = fts.ring
    x = tuple(R.var(n) for n in X_NAMES)
    y = tuple(R.var(n) for n in Y_NAMES)
    from .linalg import dot
    d = list(fts.delta(x, y, tuple(R.const(to_rational(c)) for c in probe), "x"))
    pq = [dot(x, fts.P @ y), dot(x, fts.Q @ y)]
    return span_dimension(d + pq) == span_dimension(pq) == span_dimension(d)


def construction_identities(fts: FtsSystem) -> list[CheckResult]:
    """The double-sharp identities and the derivative identities for the norms,
    re-expanded from P and Q."""
    W = fts.working_ring(vec_names("x", "a") + vec_names("y", "a"))
    f = fts.over(W)
    v = W.var
    x = tuple(v(n) for n in X_NAMES)
    y = tuple(v(n) for n in Y_NAMES)
    xa = tuple(v(n) for n in vec_names("x", "a"))
    ya = tuple(v(n) for n in vec_names("y", "a"))
    xs, ys = f.sharp_x(x), f.sharp_y(y)
    Nx, Ny = f.norm_x(x), f.norm_y(y)
    dx = {n: a for n, a in zip(X_NAMES, xa)}
    dy = {n: a for n, a in zip(Y_NAMES, ya)}
    return [
        result("P x# cross Q x# = Nx x", _terms(vsub(cross(f.P @ xs, f.Q @ xs), vscale(Nx, x)))),
        result("tP y# cross tQ y# = Ny y", _terms(vsub(cross(f.P.T @ ys, f.Q.T @ ys), vscale(Ny, y)))),
        result("d_xa Nx = b(xa, x#)", _terms(Nx.directional_derivative(dx) - f.b(xa, xs))),
        result("d_ya Ny = b(y#, ya)", _terms(Ny.directional_derivative(dy) - f.b(ys, ya))),
    ]


# the nine printed equations of the cone over P1 x P1 x P1
SEGRE_EQUATIONS = ("s*x1 - y2*y3", "s*x2 - y1*y3", "s*x3 - y1*y2",
                   "t*y1 - x2*x3", "t*y2 - x1*x3", "t*y3 - x1*x2",
                   "s*t - 1/3*x1*y1 - 1/3*x2*y2 - 1/3*x3*y3",
                   "2*x1*y1 - x2*y2 - x3*y3", "x1*y1 - 2*x2*y2 + x3*y3")


def _normalized(polys) -> list[str]:
    return sorted(str(f.monic()) for f in polys if f)


def equations_match_check(fts: FtsSystem, printed: Sequence[str], rescale: tuple | None = None,
                          name: str = "streg equations match printed set") -> CheckResult:
    """Equality of the two equation sets after making every equation monic."""
    eqs = streg_equations(fts, rescale)
    got = _normalized(eqs.polys)
    want = _normalized(eqs.ring.parse(t) for t in printed)
    extra = [g for g in got if g not in want]
    missing = [w for w in want if w not in got]
    return result(name, len(extra) + len(missing), rescale=[str(c) for c in rescale] if rescale else None,
                  unmatched_generated=extra, unmatched_printed=missing)


def peirce_check(fts: FtsSystem) -> CheckResult:
    """Spectrum {1/3, -1/3, 1/6 x3, -1/6 x3} and the squared-operator relation."""
    sp = peirce_spectrum(fts)
    want = {mpq(1, 3): 1, mpq(-1, 3): 1, mpq(1, 6): 3, mpq(-1, 6): 3}
    bad = (sp["spectrum"] != want) + sp["L_squared_residual"] + sp["unresolved_degree"]
    return result(f"peirce spectrum {fts.name}", bad,
                  spectrum={str(k): v for k, v in sorted(sp["spectrum"].items())},
                  L_squared_residual=sp["L_squared_residual"],
                  L_squared_residual_omega_pe_t_twice=sp["L_squared_residual_omega_pe_t_twice"])


def delta_span_check(fts: FtsSystem, probe: Sequence, expected: int = 2) -> CheckResult:
    d = delta_span_dim(fts, probe)
    return result(f"delta span {fts.name} at {list(map(str, probe))}", int(d != expected),
                  dimension=d, matches_pq_span=delta_span_matches(fts, probe))
