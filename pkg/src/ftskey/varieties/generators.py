"""Equation systems of the key varieties and the coordinate dictionaries
between their presentations."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Mapping

from gmpy2 import mpq

from ..arith import Polynomial, RingContext
from ..fts import X_NAMES, Y_NAMES, FtsSystem, build_fts
from ..fts_checks import streg_equations
from ..linalg import PolyMatrix, cross, det, dot, wedge2
from ..reports import EquationSystem


class VarietyId(str, Enum):
    F22 = "F22"
    U14 = "U14"
    S8 = "S8"
    S8_raw = "S8_raw"
    Z12 = "Z12"
    CL10 = "CL10"
    CL10_alt = "CL10_alt"
    CL9_A4 = "CL9_A4"
    CL8_A3A4 = "CL8_A3A4"
    CL8_A1A4_T8 = "CL8_A1A4_T8"
    CL8_A1A3 = "CL8_A1A3"
    B6 = "B6"
    P23_transform = "P23_transform"


class UnknownVariety(KeyError):
    pass


P_NAMES = tuple(f"p{i}{j}" for i in (1, 2, 3) for j in (1, 2, 3))
Q_NAMES = tuple(f"q{i}{j}" for i in (1, 2, 3) for j in (1, 2, 3))
F22_NAMES = ("s", "t") + P_NAMES + Q_NAMES + X_NAMES + Y_NAMES

U14_PARAMS = ("a11", "a12", "a21", "b11", "b12", "b21", "c11", "c12", "c21", "c22")
U14_NAMES = ("s", "t") + U14_PARAMS + X_NAMES + Y_NAMES
S8RAW_NAMES = ("s", "t", "d0", "d1", "d2", "d3") + X_NAMES + Y_NAMES
Z12_PARAMS = ("q12", "q13", "q21", "q22", "q23", "q31", "q32", "q33")
Z12_NAMES = ("s", "t") + Z12_PARAMS + X_NAMES + Y_NAMES
S8_NAMES = ("u1", "u2", "u3", "u4", "v0", "v1", "v2", "v3", "d0", "d1", "d2", "d3")
B6_NAMES = ("u1", "u2", "u3", "u4", "v0", "v1", "v2", "v3", "d0", "d1")
T8_NAMES = ("w1", "w2", "z1", "z2", "z3", "s", "t", "u", "f0", "f1", "f2", "f3")
CL_NAMES = ("th1", "th2", "th3", "th4", "th23", "th41",
            "A1", "A2", "A3", "A4", "A23", "A41", "l13", "l24")


def cl_ring(fixed: tuple[str, ...] = ()) -> RingContext:
    """Coordinates of the cluster variety, minus the variables fixed to -1."""
    return RingContext(n for n in CL_NAMES if n not in fixed)


@dataclass(frozen=True)
class CoordinateDictionary:
    """Images of the variables of one presentation in the ring of another."""

    name: str
    source: tuple[str, ...]
    target: RingContext
    images: Mapping[str, Polynomial]

    def to_json(self) -> dict:
        return {"name": self.name, "target_variables": list(self.target.names),
                "images": {k: str(self.images[k]) for k in self.source}}


# the generic template

@lru_cache(maxsize=None)
def f22_fts() -> FtsSystem:
    R = RingContext(P_NAMES + Q_NAMES)
    P = PolyMatrix(R, [[R.var(f"p{i}{j}") for j in (1, 2, 3)] for i in (1, 2, 3)])
    Q = PolyMatrix(R, [[R.var(f"q{i}{j}") for j in (1, 2, 3)] for i in (1, 2, 3)])
    return build_fts(P, Q, "F22")


@lru_cache(maxsize=None)
def f22_template() -> EquationSystem:
    eqs = streg_equations(f22_fts(), name="F22")
    ring = RingContext(F22_NAMES)
    return EquationSystem("F22", ring, eqs.labels, tuple(f.to_ring(ring) for f in eqs.polys))


def pq_dictionary(name, ring: RingContext, P, Q, x=None, y=None, s=None, t=None) -> CoordinateDictionary:
    """Dictionary sending the F22 coordinates to the given matrices and vectors."""
    c = ring.coerce
    images = {}
    for i in range(3):
        for j in range(3):
            images[f"p{i + 1}{j + 1}"] = c(P[i][j])
            images[f"q{i + 1}{j + 1}"] = c(Q[i][j])
    for names, vals in ((X_NAMES, x), (Y_NAMES, y)):
        for n, v in zip(names, vals if vals is not None else [ring.var(n) for n in names]):
            images[n] = c(v)
    images["s"] = c(s) if s is not None else ring.var("s")
    images["t"] = c(t) if t is not None else ring.var("t")
    return CoordinateDictionary(name, F22_NAMES, ring, images)


def from_template(d: CoordinateDictionary, name: str) -> EquationSystem:
    return f22_template().substitute(dict(d.images), d.target, name)


def u14_matrices(ring: RingContext):
    v = ring.var
    P = [[v("a11"), v("b11"), 1], [v("a12"), v("b12"), 0], [v("c11"), v("c12"), 0]]
    Q = [[v("a21"), v("b21"), 0], [-v("a11"), -v("b11"), 1], [v("c21"), v("c22"), 0]]
    return P, Q


def dictionary(vid: VarietyId | str) -> CoordinateDictionary:
    """Dictionary from the F22 coordinates for every template-derived variety."""
    vid = VarietyId(vid)
    h = mpq(1, 2)
    third = mpq(1, 3)
    if vid is VarietyId.F22:
        R = RingContext(F22_NAMES)
        return CoordinateDictionary("F22", F22_NAMES, R, {n: R.var(n) for n in F22_NAMES})
    if vid is VarietyId.U14:
        R = RingContext(U14_NAMES)
        P, Q = u14_matrices(R)
        return pq_dictionary("U14", R, P, Q)
    if vid is VarietyId.S8_raw:
        R = RingContext(S8RAW_NAMES)
        d0, d1, d2, d3 = (R.var(f"d{i}") for i in range(4))
        P = [[d2, d1, 1], [d1, d0, 0], [1, 0, 0]]
        Q = [[-d3, -d2, 0], [-d2, -d1, 1], [0, 1, 0]]
        return pq_dictionary("S8_raw", R, P, Q)
    if vid is VarietyId.Z12:
        R = RingContext(Z12_NAMES)
        q = {n: R.var(n) for n in Z12_PARAMS}
        P = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        Q = [[-q["q22"] - q["q33"], q["q12"], q["q13"]],
             [q["q21"], q["q22"], q["q23"]],
             [q["q31"], q["q32"], q["q33"]]]
        return pq_dictionary("Z12", R, P, Q)
    if vid is VarietyId.CL10:
        R = cl_ring()
        v = R.var
        P = [[-v("A4"), 0, 0], [0, 0, 1], [-v("l24"), -v("A2"), 0]]
        Q = [[0, 1, 0], [-v("A1"), 0, 0], [-v("l13"), 0, -v("A3")]]
        return pq_dictionary("CL10", R, P, Q, x=(v("th4"), v("th1"), v("A23")),
                             y=(v("A41"), v("th2"), v("th3")), s=-v("th23"), t=-v("th41"))
    if vid is VarietyId.CL10_alt:
        R = cl_ring()
        v = R.var
        P = [[0, 1, 1], [-v("A4"), 0, 0], [-v("l24") - v("A3") * v("A4"), 2 * v("A2"), 0]]
        Q = [[-v("A1"), 0, 0], [0, -1, 1], [-v("l13") - v("A1") * v("A2"), -2 * v("A3"), 0]]
        return pq_dictionary(
            "CL10_alt", R, P, Q,
            x=(v("th1") - v("A2") * v("A23"), v("th4") - v("A3") * v("A23"), v("A23")),
            y=(v("A41"), (v("th3") - v("th2")).scale(h), (v("th3") + v("th2")).scale(h)),
            s=v("th23"), t=2 * v("th41"))
    if vid in (VarietyId.CL9_A4, VarietyId.CL8_A1A4_T8):
        fixed = ("A4",) if vid is VarietyId.CL9_A4 else ("A1", "A4")
        R = cl_ring(fixed)
        v = R.var
        A1 = v("A1") if "A1" in R else R.const(-1)
        P = [[-v("l24").scale(h), 0, 1], [-v("A2"), 0, 0], [0, 1, 0]]
        Q = [[-v("l13"), -A1, 0], [v("l24").scale(h), 0, 1], [-v("A3"), 0, 0]]
        return pq_dictionary(
            "CL9_A4" if vid is VarietyId.CL9_A4 else "CL8_A1A4", R, P, Q,
            x=(v("A41"), v("th2"), v("th3")),
            y=(v("A23"), v("th1"), v("th4") - (v("l24") * v("A23")).scale(h)),
            s=-v("th41"), t=v("th23"))
    if vid is VarietyId.CL8_A3A4:
        R = cl_ring(("A3", "A4"))
        v = R.var
        l13, l24 = v("l13").scale(third), v("l24").scale(third)
        P = [[l13, -l24, 1], [-l24, -v("A2"), 0], [1, 0, 0]]
        Q = [[-v("A1"), -l13, 0], [-l13, l24, 1], [0, 1, 0]]
        return pq_dictionary(
            "CL8_A3A4", R, P, Q,
            x=(v("A41"), v("th2"), v("th3") - 2 * l13 * v("A41") + l24 * v("th2")),
            y=(v("th1"), v("A23"), v("th4") + l13 * v("th1") - 2 * l24 * v("A23")),
            s=-v("th41"), t=-v("th23"))
    if vid is VarietyId.CL8_A1A3:
        R = cl_ring(("A1", "A3"))
        v = R.var
        l13 = v("l13").scale(third)
        P = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        Q = [[-l13, -v("A4"), 0], [0, 2 * l13, 1], [-v("A2"), -v("l24"), -l13]]
        return pq_dictionary(
            "CL8_A1A3", R, P, Q,
            x=(v("th4"), v("th1"), v("A23")),
            y=(v("th2"), v("A41"), v("th3") - v("l13") * v("A41")),
            s=v("th23"), t=-v("th41"))
    raise UnknownVariety(f"{vid.value} has no dictionary from the F22 coordinates")


def specialized_cl10(fixed: tuple[str, ...]) -> EquationSystem:
    """The CL10 equations with the listed A-variables set to -1."""
    base = generate(VarietyId.CL10)
    R = cl_ring(fixed)
    return base.substitute({n: -1 for n in fixed}, R, "CL10|" + ",".join(f"{n}=-1" for n in fixed))


# systems that are not specializations of the template

def s8_matrices(ring: RingContext):
    v = ring.var
    U = PolyMatrix(ring, [[v("u1"), v("u2")], [v("u3"), v("u4")]])
    V = PolyMatrix(ring, [[v("v2"), v("v1"), v("v0")], [-v("v3"), -v("v2"), -v("v1")]])
    D = PolyMatrix(ring, [[v("d2"), v("d1"), v("d0")], [-v("d3"), -v("d2"), -v("d1")]])
    return U, V, D


def hat(g: PolyMatrix) -> PolyMatrix:
    """Action of a 2x2 matrix on binary quadrics (the rule defining U-hat)."""
    (a, b), (c, d) = g.rows
    return PolyMatrix(g.ring, [
        [a * a, a * b, b * b],
        [2 * a * c, a * d + b * c, 2 * b * d],
        [c * c, c * d, d * d],
    ])


def hat_dagger(g: PolyMatrix) -> PolyMatrix:
    (a, b), (c, d) = g.rows
    return PolyMatrix(g.ring, [
        [d * d, -b * d, b * b],
        [-2 * c * d, a * d + b * c, -2 * a * b],
        [c * c, -a * c, a * a],
    ])


def s8_equations(ring: RingContext, U, V, D, name="S8") -> EquationSystem:
    """UV = D U-hat (six equations) and wedge2 V = wedge2 D tU-hat-dagger (three)."""
    E1 = U @ V - D @ hat(U)
    w = wedge2(D)
    Hd = hat_dagger(U).T
    rhs = tuple(dot(w, Hd.col(j)) for j in range(3))
    E2 = tuple(a - b for a, b in zip(wedge2(V), rhs))
    labels = tuple(f"UV{i + 1}{j + 1}" for i in range(2) for j in range(3)) + ("W1", "W2", "W3")
    return EquationSystem(name, ring, labels, tuple(E1.entries()) + E2)


def s8_system() -> EquationSystem:
    R = RingContext(S8_NAMES)
    return s8_equations(R, *s8_matrices(R))


def s8_from_raw() -> CoordinateDictionary:
    """S8 coordinates in terms of the U14-type coordinates of S8_raw."""
    R = RingContext(S8RAW_NAMES)
    v = R.var
    images = {"u1": v("y1"), "u2": -v("x1"), "u3": v("y2"), "u4": -v("x2"),
              "v2": v("y3"), "v1": v("x3"), "v0": v("t"), "v3": v("s")}
    for i in range(4):
        images[f"d{i}"] = v(f"d{i}")
    return CoordinateDictionary("S8<-S8_raw", S8_NAMES, R, images)


def s8_from_cl8_a3a4() -> CoordinateDictionary:
    """S8 coordinates in terms of the cluster coordinates with A3 = A4 = -1."""
    R = cl_ring(("A3", "A4"))
    v = R.var
    third = mpq(1, 3)
    l13, l24 = v("l13").scale(third), v("l24").scale(third)
    images = {
        "u1": v("th1"), "u2": -v("A41"), "u3": v("A23"), "u4": -v("th2"),
        "v2": v("th4") + l13 * v("th1") - 2 * l24 * v("A23"),
        "v1": v("th3") - 2 * l13 * v("A41") + l24 * v("th2"),
        "v0": -v("th23"), "v3": -v("th41"),
        "d0": -v("A2"), "d1": -l24, "d2": l13, "d3": v("A1"),
    }
    return CoordinateDictionary("S8<-CL8_A3A4", S8_NAMES, R, images)


def t8_system() -> EquationSystem:
    R = RingContext(T8_NAMES)
    v = R.var
    z1, z2, z3 = v("z1"), v("z2"), v("z3")
    f0, f1, f2, f3 = (v(f"f{i}") for i in range(4))
    w1, w2 = v("w1"), v("w2")
    s, t, u = v("s"), v("t"), v("u")
    Z = PolyMatrix(R, [[z1, -z2], [z3, -z1]])
    w = (w1, w2)
    F = PolyMatrix(R, [[f2, f1, f0], [f3, f2, f1]])
    z = (z2, -2 * z1, z3)
    Fd = PolyMatrix(R, [[-f1, f0], [2 * f2, -2 * f1], [-f3, f2]])
    Fz = F @ z
    polys = []
    polys += [a + u * b for a, b in zip(Z @ w, Fz)]
    polys += [t * a - b for a, b in zip(w, Z @ Fz)]
    polys.append(t * u - det(Z))
    wF = wedge2(F.T)
    Fdw = Fd @ w
    quad = (w1 * w1, -2 * w1 * w2, w2 * w2)
    polys += [s * z[i] - (-2 * u * u * wF[i] + u * Fdw[i] + quad[i]) for i in range(3)]
    wFd = wedge2(Fd)
    polys.append(s * t - (-(u * dot(wFd, z)).scale(mpq(1, 2)) + dot((w2, -w1), Fz)))
    labels = ("Zw1", "Zw2", "tw1", "tw2", "tu", "sz1", "sz2", "sz3", "st")
    return EquationSystem("CL8_A1A4_T8", R, labels, tuple(polys))


def t8_dictionary() -> CoordinateDictionary:
    """T8 coordinates in terms of the cluster coordinates with A1 = A4 = -1."""
    R = cl_ring(("A1", "A4"))
    v = R.var
    third = mpq(1, 3)
    images = {
        "w1": v("th1") - (v("l13") * v("A23")).scale(third),
        "w2": -v("th4") + (v("l24") * v("A23")).scale(third),
        "z1": v("A41"), "z2": v("th2"), "z3": v("th3"),
        "f0": -v("A3"), "f1": v("l13").scale(third), "f2": v("l24").scale(third), "f3": -v("A2"),
        "s": -v("th41"), "t": v("th23"), "u": v("A23"),
    }
    return CoordinateDictionary("T8<-CL8_A1A4", T8_NAMES, R, images)


def b6_system() -> EquationSystem:
    R = RingContext(B6_NAMES)
    return s8_system().substitute({"d2": 0, "d3": -1}, R, "B6")


@lru_cache(maxsize=None)
def generate(vid: VarietyId | str) -> EquationSystem:
    """The defining equations of a key variety."""
    try:
        vid = VarietyId(vid)
    except ValueError:
        raise UnknownVariety(vid) from None
    if vid is VarietyId.F22:
        return f22_template()
    if vid is VarietyId.S8:
        return s8_system()
    if vid is VarietyId.B6:
        return b6_system()
    if vid is VarietyId.CL8_A1A4_T8:
        return t8_system()
    if vid is VarietyId.P23_transform:
        from .papadakis import papadakis_system
        return papadakis_system()
    return from_template(dictionary(vid), vid.value)


def fts_of(vid: VarietyId | str) -> FtsSystem:
    """The FTS built directly from the (P, Q) pair of a template-derived variety."""
    d = dictionary(vid)
    R = d.target
    params = tuple(n for n in R.names if n not in ("s", "t") + X_NAMES + Y_NAMES)
    PR = RingContext(params)
    P = PolyMatrix(PR, [[d.images[f"p{i}{j}"].to_ring(PR) for j in (1, 2, 3)] for i in (1, 2, 3)])
    Q = PolyMatrix(PR, [[d.images[f"q{i}{j}"].to_ring(PR) for j in (1, 2, 3)] for i in (1, 2, 3)])
    return build_fts(P, Q, VarietyId(vid).value)
