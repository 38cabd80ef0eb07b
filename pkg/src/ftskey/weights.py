"""Weight gradings making an equation system homogeneous, and the degree
bookkeeping of the graded free resolution of the U14 ideal."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from gmpy2 import mpq

from .arith import Polynomial, Rational, RingContext, format_rational, to_rational
from .linalg import nullspace, rank, rref
from .reports import CheckResult, EquationSystem, result


class NotAFreeBlock(ValueError):
    pass


class NotHomogeneous(ValueError):
    def __init__(self, label: str):
        super().__init__(f"equation {label} is not homogeneous for these weights")
        self.label = label


@dataclass(frozen=True)
class WeightConstraintSystem:
    """Integer rows c with sum_v c_v w(v) = 0, one per independent difference
    of exponent vectors within an equation."""

    unknowns: tuple[str, ...]
    constraints: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        rows = [linear_text(dict(zip(self.unknowns, row))) + " = 0" for row in self.constraints]
        return {"unknowns": list(self.unknowns), "constraints": rows}


def weight_constraints(sys_: EquationSystem) -> WeightConstraintSystem:
    """Differences of each monomial against the first one of its equation.

    These span the same space as all pairwise differences.
    """
    seen: set[tuple[int, ...]] = set()
    rows = []
    for f in sys_.polys:
        exps = [e for e, _ in f.monomials()]
        for e in exps[1:]:
            d = tuple(a - b for a, b in zip(e, exps[0]))
            # fix the sign so that a relation and its negative coincide
            lead = next(c for c in d if c)
            if lead < 0:
                d = tuple(-c for c in d)
            if d not in seen:
                seen.add(d)
                rows.append(d)
    return WeightConstraintSystem(sys_.ring.names, tuple(sorted(rows, reverse=True)))


@dataclass
class WeightSolution:
    dimension: int
    basis: list[list]
    free_block: tuple[str, ...] | None = None
    parametrization: dict[str, dict[str, object]] = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"dimension": self.dimension,
               "basis": [[format_rational(c) for c in row] for row in self.basis]}
        if self.free_block is not None:
            out["free_block"] = list(self.free_block)
            out["relations"] = {v: linear_text(coeffs) for v, coeffs in self.parametrization.items()}
        return out


def linear_text(coeffs: Mapping[str, object]) -> str:
    terms = [(n, to_rational(c)) for n, c in coeffs.items() if c]
    if not terms:
        return "0"
    out = []
    for k, (n, c) in enumerate(terms):
        mag = abs(c)
        body = f"w({n})" if mag == 1 else f"{format_rational(mag)}*w({n})"
        out.append(("-" if c < 0 else "") + body if k == 0 else (" - " if c < 0 else " + ") + body)
    return "".join(out)


def solve_weights(wcs: WeightConstraintSystem, free_block: Sequence[str] | None = None) -> WeightSolution:
    """Exact solution space of the constraints; with a free block, every
    weight as a linear form in the block."""
    n = len(wcs.unknowns)
    basis = nullspace([list(r) for r in wcs.constraints], n) if wcs.constraints else [
        [mpq(int(i == j)) for j in range(n)] for i in range(n)]
    sol = WeightSolution(len(basis), basis)
    if free_block is None:
        return sol
    idx = [wcs.unknowns.index(v) for v in free_block]
    if len(idx) != len(basis):
        raise NotAFreeBlock(f"block of size {len(idx)} for a solution space of dimension {len(basis)}")
    # rows of M: basis vectors restricted to the block; need M invertible
    M = [[row[i] for i in idx] for row in basis]
    if rank(M) != len(idx):
        raise NotAFreeBlock("the block does not determine the other weights")
    # w = c B with c M = w_block, so w = w_block M^{-1} B
    k = len(idx)
    aug = [list(M[i]) + [mpq(int(i == j)) for j in range(k)] for i in range(k)]
    # invert M^T: solve for M^{-1} via rref of [M | I]
    red, _ = rref(aug)
    Minv = [row[k:] for row in red]
    coeff = [[sum((Minv[f][i] * basis[i][j] for i in range(k)), mpq(0)) for j in range(n)] for f in range(k)]
    sol.free_block = tuple(free_block)
    sol.parametrization = {
        v: {free_block[f]: coeff[f][j] for f in range(k) if coeff[f][j]} for j, v in enumerate(wcs.unknowns)
    }
    return sol


def parse_relations(ring_names: Sequence[str], free_block: Sequence[str],
                    table: Mapping[str, str]) -> dict[str, dict[str, Rational]]:
    """Relation table {variable: 'linear form in the free block'} as coefficients;
    free variables map to themselves."""
    R = RingContext(free_block)
    out = {}
    for v in ring_names:
        if v in free_block:
            out[v] = {v: mpq(1)}
            continue
        f = R.parse(table[v])
        if f.degree() > 1 or f.constant_term():
            raise ValueError(f"relation for {v} is not a linear form")
        out[v] = {n: c for n in free_block if (c := f.derivative(n).constant_value())}
    return out


# relations printed for the two systems, in the notation of the generators
U14_FREE = ("x1", "x2", "x3", "y1", "y2", "y3")
U14_RELATIONS = {
    "a11": "-y1 + y3", "a12": "x1 + y3 - x2 - y1", "a21": "x2 + y3 - x1 - y1",
    "b11": "-y2 + y3", "b12": "x1 + y3 - x2 - y2", "b21": "x2 + y3 - x1 - y2",
    "c11": "x1 + y3 - x3 - y1", "c12": "x1 + y3 - x3 - y2",
    "c21": "x2 + y3 - x3 - y1", "c22": "x2 + y3 - x3 - y2",
    "s": "-x3 + 2*y3", "t": "x1 + x2 + y3 - y1 - y2",
}
CL10_FREE = ("th1", "th2", "th3", "th4", "th23", "th41")
CL10_RELATIONS = {
    "A1": "-2*th1 + th2 + th41", "A2": "th1 - 2*th2 + th23",
    "A3": "-2*th3 + th4 + th23", "A4": "th3 - 2*th4 + th41",
    "A23": "th2 + th3 - th23", "A41": "th1 + th4 - th41",
    "l13": "-th1 - th3 + th23 + th41", "l24": "-th2 - th4 + th23 + th41",
}
U14_EXAMPLE = {
    **{n: 1 for n in ("a11", "a12", "a21", "b11", "b12", "b21", "c11", "c12", "c21", "c22")},
    "x1": 1, "x2": 1, "x3": 1, "y1": 1, "y2": 1, "y3": 2, "s": 3, "t": 2,
}
S8_EXAMPLE = {**{f"u{i}": 1 for i in range(1, 5)}, **{f"v{i}": 2 for i in range(4)},
              **{f"d{i}": 1 for i in range(4)}}


def relation_table_check(sys_: EquationSystem, free_block: Sequence[str], table: Mapping[str, str],
                         expected_dimension: int = 6) -> CheckResult:
    """The solved weights coincide with a printed relation table."""
    wcs = weight_constraints(sys_)
    sol = solve_weights(wcs, free_block)
    printed = parse_relations(sys_.ring.names, free_block, table)
    diff = [v for v in sys_.ring.names if sol.parametrization[v] != printed[v]]
    bad = len(diff) + (sol.dimension != expected_dimension)
    return result(f"weights:{sys_.name}", bad, dimension=sol.dimension, free_block=list(free_block),
                  mismatched=diff, relations={v: linear_text(c) for v, c in sol.parametrization.items()})


# weighted degrees

class WeightAssignment(dict):
    """Weights per variable; values are rationals or linear forms."""

    def of(self, monomial: str):
        """Weight of a monomial written like 'x1*y3' or 'sx1y3'."""
        total = 0
        for name in _split_monomial(monomial, self):
            total = total + self[name]
        return total

    def degree(self, f: Polynomial, label: str = "?"):
        first = None
        for exps, _ in f.monomials():
            d = 0
            for e, n in zip(exps, f.ring.names):
                if e:
                    d = d + e * self[n]
            if first is None:
                first = d
            elif d != first:
                raise NotHomogeneous(label)
        return first

    def check(self, sys_: EquationSystem) -> list:
        return [self.degree(f, l) for l, f in sys_.items()]


def _split_monomial(text: str, names) -> list[str]:
    text = text.replace("*", "")
    out, i = [], 0
    keys = sorted(names, key=len, reverse=True)
    while i < len(text):
        for k in keys:
            if text.startswith(k, i):
                out.append(k)
                i += len(k)
                break
        else:
            raise ValueError(f"cannot read monomial {text!r}")
    return out


def symbolic_u14_weights() -> WeightAssignment:
    """Every admissible U14 weight as a linear form in the free block."""
    R = RingContext(U14_FREE)
    w = WeightAssignment({n: R.var(n) for n in U14_FREE})
    for n, text in U14_RELATIONS.items():
        w[n] = R.parse(text)
    return w


# module degrees of the resolution, written as monomials
P1_LABELS = ("x1y3", "x2y3", "sx1", "sx2", "sx3", "ty1", "ty2", "ty3", "st")
P2_LABELS = ("sx1y3", "sx2y3", "tx1y3", "tx2y3", "stx1", "stx2", "stx3", "sty1", "sty2", "sty3",
             "sx1x2", "sx1x3", "sx2x3", "ty1y2", "ty1y3", "ty2y3")


@dataclass
class GradedDegreeReport:
    equation_degrees: list
    delta: object
    ambient_canonical_twist: object
    variety_canonical_twist: object
    p1: list
    p2: list
    p3: list
    checks: dict

    def to_json(self) -> dict:
        def txt(v):
            return format_rational(v) if isinstance(v, Rational) else str(v)

        def ms(vals):
            return sorted((txt(v) for v in vals), key=lambda s: (len(s), s))

        return {
            "equation_degrees": ms(self.equation_degrees), "delta": txt(self.delta),
            "ambient_canonical_twist": txt(self.ambient_canonical_twist),
            "variety_canonical_twist": txt(self.variety_canonical_twist),
            "P1": ms(self.p1), "P2": ms(self.p2), "P3": ms(self.p3), "checks": self.checks,
        }


def graded_report(sys_: EquationSystem, w: Mapping[str, object]) -> GradedDegreeReport:
    """Degree bookkeeping of the U14 resolution for a weight assignment.

    Raises NotHomogeneous when some equation is not homogeneous.
    """
    w = w if isinstance(w, WeightAssignment) else WeightAssignment(
        {k: (v if isinstance(v, Polynomial) else to_rational(v)) for k, v in w.items()})
    degs = w.check(sys_)
    delta = 2 * w.of("x1x2") - w.of("x3") - w.of("y1y2") + 5 * w.of("y3")
    ambient = 0
    for n in sys_.ring.names:
        ambient = ambient - w[n]
    ambient_printed = -4 * w.of("x1x2") + 5 * w.of("y1y2") + 4 * w.of("x3") - 14 * w.of("y3")
    variety = -2 * w.of("x1x2") + 4 * w.of("y1y2") + 3 * w.of("x3") - 9 * w.of("y3")
    p1 = [w.of(m) for m in P1_LABELS]
    p2 = [w.of(m) for m in P2_LABELS]
    p3 = [delta - d for d in p1]

    def bag(vals):
        return Counter(str(v) for v in vals)

    checks = {
        "equation_degrees_match_P1": bag(degs) == bag(p1),
        "P3_is_delta_minus_P1": bag(p3) == bag(delta - d for d in degs),
        "P2_self_dual": bag(p2) == bag(delta - d for d in p2),
        "ambient_twist_matches_printed": str(ambient) == str(ambient_printed),
        "variety_minus_ambient_is_delta": str(variety - ambient) == str(delta),
    }
    return GradedDegreeReport(degs, delta, ambient, variety, p1, p2, p3, checks)


def graded_check(sys_: EquationSystem, w: Mapping[str, object], name: str,
                 expected: Mapping[str, object] | None = None) -> CheckResult:
    rep = graded_report(sys_, w)
    data = rep.to_json()
    bad = [k for k, ok in rep.checks.items() if not ok]
    if expected:
        bad += [k for k, v in expected.items() if data[k] != v]
    return result(name, len(bad), failed=bad, report=data)
