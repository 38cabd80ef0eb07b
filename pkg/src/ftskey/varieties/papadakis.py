"""The Papadakis affine 27-space transformed to the cone over F22.

The cone coordinate z appears only as r^2, where r is its square root.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from gmpy2 import mpq

from ..arith import LaurentPolynomial, RingContext, laurent_substitute
from ..linalg import PolyMatrix, det
from ..reports import PASS, FAIL, CheckResult
from .generators import X_NAMES, Y_NAMES, f22_template

SKEW = ("12", "13", "23")
SYM = ("11", "12", "13", "22", "23", "33")
P23_NAMES = (("s0", "s1")
             + tuple(f"X{i}" for i in (1, 2, 3)) + tuple(f"Y{i}" for i in (1, 2, 3))
             + tuple(f"a{ij}_{k}" for k in (1, 2) for ij in SKEW)
             + tuple(f"b{ij}_{k}" for k in (1, 2) for ij in SYM)
             + ("r",))


@dataclass(frozen=True)
class LaurentSystem:
    """Labelled Laurent equations in the distinguished variable r."""

    name: str
    ring: RingContext
    labels: tuple[str, ...]
    polys: tuple[LaurentPolynomial, ...]

    def __len__(self):
        return len(self.polys)

    def __getitem__(self, label: str) -> LaurentPolynomial:
        return self.polys[self.labels.index(label)]

    def items(self):
        return zip(self.labels, self.polys)

    def r_ranges(self) -> dict[str, tuple[int, int]]:
        return {l: f.r_exponent_range() for l, f in self.items()}

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "variables": list(self.ring.names),
            "distinguished": "r",
            "equations": [{"label": l, "text": str(f), "r_range": list(f.r_exponent_range())}
                          for l, f in self.items()],
        }

    def to_text(self) -> str:
        head = f"# {self.name}\n# variables: {' '.join(self.ring.names)}\n# z = r^2\n"
        return head + "".join(f"{l} [r^{lo}..r^{hi}]: {f} = 0\n"
                              for l, f in self.items() for lo, hi in [f.r_exponent_range()])


def p23_ring() -> RingContext:
    return RingContext(P23_NAMES)


def _laurent(ring: RingContext, poly, shift=0) -> LaurentPolynomial:
    return LaurentPolynomial(ring.coerce(poly), shift)


def skew(ring: RingContext, k: int) -> PolyMatrix:
    a = {ij: ring.var(f"a{ij}_{k}") for ij in SKEW}
    z = ring.zero()
    return PolyMatrix(ring, [[z, a["12"], a["13"]], [-a["12"], z, a["23"]], [-a["13"], -a["23"], z]])


def sym(ring: RingContext, k: int) -> PolyMatrix:
    def b(i, j):
        i, j = min(i, j), max(i, j)
        return ring.var(f"b{i}{j}_{k}")
    return PolyMatrix(ring, [[b(i, j) for j in (1, 2, 3)] for i in (1, 2, 3)])


def a_vector(ring: RingContext, k: int) -> list:
    """(-a23, a13, -a12) of the k-th skew matrix."""
    v = ring.var
    return [-v(f"a23_{k}"), v(f"a13_{k}"), -v(f"a12_{k}")]


def determinant_with_rows(ring: RingContext, first) -> object:
    """det of the rows first, (a23, -a13, a12) of A1, the same of A2."""
    rows = [list(first)] + [[-c for c in a_vector(ring, k)] for k in (1, 2)]
    return det(PolyMatrix(ring, rows))


def papadakis_images(ring: RingContext | None = None) -> dict[str, LaurentPolynomial]:
    """Images of the F22 coordinates s, t, P, Q, x, y."""
    R = ring or p23_ring()
    v = R.var
    r = _laurent(R, v("r"))
    half_inv_r = _laurent(R, R.const(mpq(1, 2)), -1)
    X = [v(f"X{i}") for i in (1, 2, 3)]
    Y = [v(f"Y{i}") for i in (1, 2, 3)]
    images: dict[str, LaurentPolynomial] = {}
    for n, xi, yi in zip(X_NAMES, X, Y):
        images[n] = r * xi + yi
    for n, xi, yi in zip(Y_NAMES, X, Y):
        images[n] = -(r * xi) + yi
    for letter, k in (("p", 1), ("q", 2)):
        A, B = skew(R, k), sym(R, k)
        for i in range(3):
            for j in range(3):
                images[f"{letter}{i + 1}{j + 1}"] = half_inv_r * A[i, j] + B[i, j]
    DX = determinant_with_rows(R, X)
    DY = determinant_with_rows(R, Y)
    a1, a2 = a_vector(R, 1), a_vector(R, 2)
    B1, B2 = sym(R, 1), sym(R, 2)

    def mixed(w):
        left = PolyMatrix(R, [a1]) @ B2 @ PolyMatrix(R, [[c] for c in w])
        right = PolyMatrix(R, [a2]) @ B1 @ PolyMatrix(R, [[c] for c in w])
        return left[0, 0] - right[0, 0]

    mY, mX = mixed(Y), mixed(X)
    s0, s1 = v("s0"), v("s1")
    common = -s1 + _laurent(R, DY / 4, -2) - mX / 2
    odd = r * s0 + _laurent(R, 3 * DX / 4, -1) - half_inv_r * mY
    images["s"] = common - odd
    images["t"] = common + odd
    return images


@lru_cache(maxsize=None)
def papadakis_system() -> LaurentSystem:
    """The nine F22 equations pulled back along the transform."""
    R = p23_ring()
    images = papadakis_images(R)
    T = f22_template()
    return LaurentSystem("P23_transform", R, T.labels,
                         tuple(laurent_substitute(f, images, R) for f in T.polys))


def papadakis_transform() -> LaurentSystem:
    return papadakis_system()


def degeneration_check() -> CheckResult:
    """A1 = A2 = 0 and r = 1 gives the F22 equations in linearly changed coordinates."""
    skew_zero = {f"a{ij}_{k}": 0 for k in (1, 2) for ij in SKEW}
    flat = RingContext(n for n in P23_NAMES if n not in skew_zero and n != "r")
    sys_ = papadakis_system()
    got = [f.substitute(skew_zero).to_polynomial().substitute({**skew_zero, "r": 1}, flat)
           for f in sys_.polys]
    v = flat.var
    images = {}
    for n, i in zip(X_NAMES, (1, 2, 3)):
        images[n] = v(f"X{i}") + v(f"Y{i}")
    for n, i in zip(Y_NAMES, (1, 2, 3)):
        images[n] = -v(f"X{i}") + v(f"Y{i}")
    B1, B2 = sym(flat, 1), sym(flat, 2)
    for i in range(3):
        for j in range(3):
            images[f"p{i + 1}{j + 1}"] = B1[i, j]
            images[f"q{i + 1}{j + 1}"] = B2[i, j]
    images["s"] = -v("s0") - v("s1")
    images["t"] = v("s0") - v("s1")
    want = f22_template().substitute(images, flat).polys
    bad = [l for l, g, w in zip(sys_.labels, got, want) if g != w]
    return CheckResult("papadakis:degeneration", FAIL if bad else PASS, len(bad), {"mismatched": bad})


def _negate_skew(R: RingContext) -> dict:
    return {f"a{ij}_{k}": -R.var(f"a{ij}_{k}") for k in (1, 2) for ij in SKEW}


def involution_report() -> dict:
    """How r -> -r, alone or together with A^k -> -A^k, acts on the system.

    For each transformed equation, report whether its image is, up to sign,
    one of the equations.  Observed behavior only; nothing is asserted.
    """
    sys_ = papadakis_system()
    R = sys_.ring
    out = {}
    for tag, extra in (("r", {}), ("r_and_skew", _negate_skew(R))):
        mapping = {"r": -R.var("r"), **extra}
        hits = {}
        for l, f in sys_.items():
            g = f.substitute(mapping)
            match = None
            for l2, h in sys_.items():
                if g == h:
                    match = f"+{l2}"
                    break
                if g == -h:
                    match = f"-{l2}"
                    break
            hits[l] = match
        out[tag] = {"images": hits, "closed_up_to_sign": all(m is not None for m in hits.values())}
    return out


def papadakis_report() -> CheckResult:
    sys_ = papadakis_system()
    deg = degeneration_check()
    ranges = sys_.r_ranges()
    return CheckResult("papadakis:transform", deg.status, deg.residual_terms,
                       {"r_ranges": {l: list(v) for l, v in ranges.items()},
                        "terms": {l: len(f.poly) for l, f in sys_.items()},
                        "degeneration": deg.details, "involution": involution_report()})


__all__ = ["LaurentSystem", "P23_NAMES", "degeneration_check", "involution_report",
           "papadakis_images", "papadakis_report", "papadakis_system", "papadakis_transform", "p23_ring"]
