"""Exact sparse polynomials over the rationals, plus Laurent polynomials in one
distinguished variable.

Monomials are packed into a single int, eight bits per variable (seven usable,
the top bit of every byte is a guard). Multiplying monomials is then integer
addition and divisibility is one masked subtraction. Coefficients are
``gmpy2.mpq``.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from functools import lru_cache
from heapq import heappop, heappush
from numbers import Rational as _RationalABC
from typing import Iterable, Iterator, Mapping, Sequence, Union

from gmpy2 import mpq

BITS = 8
FIELD = (1 << BITS) - 1
MAX_EXP = (1 << (BITS - 1)) - 1

Rational = type(mpq(0))
Coeff = Union[int, Fraction, str, "Rational"]


class RingMismatch(ValueError):
    """Operands live in different rings."""


class NotDivisible(ArithmeticError):
    """Exact division left a nonzero remainder."""


class ParseError(ValueError):
    pass


def to_rational(value: Coeff) -> Rational:
    """Coerce an int, Fraction, mpq or 'a/b' string to an mpq."""
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, (Fraction, _RationalABC)):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        return mpq(Fraction(value.strip()))
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def format_rational(c: Rational) -> str:
    n, d = int(c.numerator), int(c.denominator)
    return str(n) if d == 1 else f"{n}/{d}"


class RingContext:
    """Ordered variable names of a polynomial ring over Q.

    Two contexts are the same ring exactly when their name tuples agree.
    """

    __slots__ = ("names", "index", "nvars", "guard", "_gens")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for n in names:
            if not n or not n.isidentifier():
                raise ValueError(f"bad variable name {n!r}")
        self.names = names
        self.index = {n: i for i, n in enumerate(names)}
        self.nvars = len(names)
        self.guard = sum(1 << (BITS * i + BITS - 1) for i in range(self.nvars))
        self._gens = None

    def __eq__(self, other):
        return isinstance(other, RingContext) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"RingContext({list(self.names)})"

    def __contains__(self, name):
        return name in self.index

    # construction helpers
    def gens(self) -> tuple["Polynomial", ...]:
        if self._gens is None:
            self._gens = tuple(
                Polynomial(self, {1 << (BITS * i): mpq(1)}) for i in range(self.nvars)
            )
        return self._gens

    def var(self, name: str) -> "Polynomial":
        try:
            return self.gens()[self.index[name]]
        except KeyError:
            raise KeyError(f"{name!r} is not a variable of {self!r}") from None

    def __getitem__(self, name: str) -> "Polynomial":
        return self.var(name)

    def const(self, c: Coeff) -> "Polynomial":
        c = to_rational(c)
        return Polynomial(self, {0: c} if c else {})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {0: mpq(1)})

    def extend(self, names: Iterable[str]) -> "RingContext":
        """This ring with extra variables appended (already present ones skipped)."""
        extra = [n for n in names if n not in self.index]
        return RingContext(self.names + tuple(extra))

    def pack(self, exps: Sequence[int]) -> int:
        if len(exps) != self.nvars:
            raise ValueError("exponent vector has wrong length")
        m = 0
        for i, e in enumerate(exps):
            if e < 0 or e > MAX_EXP:
                raise OverflowError(f"exponent {e} out of range")
            m |= e << (BITS * i)
        return m

    def unpack(self, m: int) -> tuple[int, ...]:
        return _unpack(m, self.nvars)

    def from_terms(self, terms: Iterable[tuple[Sequence[int], Coeff]]) -> "Polynomial":
        acc: dict[int, Rational] = {}
        for exps, c in terms:
            m = self.pack(exps)
            acc[m] = acc.get(m, 0) + to_rational(c)
        return Polynomial(self, {m: c for m, c in acc.items() if c})

    def parse(self, text: str) -> "Polynomial":
        """Parse '+ - * / ^ **' expressions with rational constants and ring variables."""
        return parse_polynomial(self, text)

    def coerce(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            if value.ring == self:
                return value
            return value.to_ring(self)
        if isinstance(value, str):
            return self.parse(value)
        return self.const(value)


@lru_cache(maxsize=1 << 18)
def _unpack(m: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        out.append(m & FIELD)
        m >>= BITS
    return tuple(out)


@lru_cache(maxsize=1 << 18)
def _grevlex_key(m: int, n: int) -> tuple:
    exps = _unpack(m, n)
    return (sum(exps), tuple(-e for e in reversed(exps)))


@lru_cache(maxsize=1 << 18)
def _heap_key(m: int, n: int) -> tuple:
    # smaller means larger in grevlex, for heapq
    exps = _unpack(m, n)
    return (-sum(exps), tuple(reversed(exps)))


def _mono_degree(m: int) -> int:
    d = 0
    while m:
        d += m & FIELD
        m >>= BITS
    return d


class Polynomial:
    """Immutable sparse polynomial with rational coefficients.

    ``terms`` maps a packed monomial to a nonzero mpq. Do not mutate it.
    """

    __slots__ = ("ring", "terms", "_deg")

    def __init__(self, ring: RingContext, terms: dict[int, Rational]):
        self.ring = ring
        self.terms = terms
        self._deg = None

    # basic queries
    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self) -> Rational:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get(0, mpq(0))

    def constant_term(self) -> Rational:
        return self.terms.get(0, mpq(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if self._deg is None:
            self._deg = max((_mono_degree(m) for m in self.terms), default=-1)
        return self._deg

    def degree_in(self, name: str) -> int:
        i = self.ring.index[name]
        shift = BITS * i
        return max(((m >> shift) & FIELD for m in self.terms), default=-1)

    def variables(self) -> tuple[str, ...]:
        """Names of the variables that occur, in ring order."""
        seen = 0
        for m in self.terms:
            seen |= m
        out = []
        for i, name in enumerate(self.ring.names):
            if (seen >> (BITS * i)) & FIELD:
                out.append(name)
        return tuple(out)

    def involves(self, name: str) -> bool:
        return self.degree_in(name) > 0

    def is_homogeneous(self) -> bool:
        return len({_mono_degree(m) for m in self.terms}) <= 1

    def monomials(self) -> Iterator[tuple[tuple[int, ...], Rational]]:
        n = self.ring.nvars
        for m, c in self.terms.items():
            yield _unpack(m, n), c

    def coefficient(self, exps: Sequence[int]) -> Rational:
        return self.terms.get(self.ring.pack(exps), mpq(0))

    def sorted_terms(self) -> list[tuple[int, Rational]]:
        """Terms in descending grevlex order."""
        n = self.ring.nvars
        return sorted(self.terms.items(), key=lambda t: _grevlex_key(t[0], n), reverse=True)

    def leading_term(self) -> tuple[int, Rational]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        n = self.ring.nvars
        return max(self.terms.items(), key=lambda t: _grevlex_key(t[0], n))

    def leading_coefficient(self) -> Rational:
        return self.leading_term()[1]

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self * (1 / self.leading_coefficient())

    # arithmetic
    def _check(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, (int, Fraction, Rational)) and not isinstance(other, bool):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = dict(a)
        for m, c in b.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = -c
            else:
                v = v - c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial(self.ring, out)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, c: Coeff) -> "Polynomial":
        c = to_rational(c)
        if not c:
            return Polynomial(self.ring, {})
        return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Rational)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._check(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if not a or not b:
            return Polynomial(self.ring, {})
        if self.degree() + other.degree() > MAX_EXP:
            raise OverflowError("product degree exceeds packed exponent range")
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            ((mb, cb),) = b.items()
            return Polynomial(self.ring, {ma + mb: ca * cb for ma, ca in a.items()})
        out: dict[int, Rational] = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                k = ma + mb
                v = get(k)
                out[k] = ca * cb if v is None else v + ca * cb
        return Polynomial(self.ring, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Rational)) and not isinstance(other, bool):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self.scale(1 / to_rational(other))
        if isinstance(other, Polynomial):
            return exact_divide(self, other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction, Rational)) and not isinstance(other, bool):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.names, frozenset(self.terms.items())))

    # calculus and substitution
    def derivative(self, name: str) -> "Polynomial":
        i = self.ring.index[name]
        shift = BITS * i
        unit = 1 << shift
        out = {}
        for m, c in self.terms.items():
            e = (m >> shift) & FIELD
            if e:
                out[m - unit] = c * e
        return Polynomial(self.ring, out)

    def directional_derivative(self, direction: Mapping[str, "Polynomial"]) -> "Polynomial":
        """Sum over v of direction[v] * d(self)/dv."""
        total = self.ring.zero()
        for name, d in direction.items():
            total = total + self.derivative(name) * self.ring.coerce(d)
        return total

    def substitute(self, mapping: Mapping[str, object], ring: RingContext | None = None) -> "Polynomial":
        """Replace variables by polynomials.

        The result lives in ``ring`` (default: this ring). Variables without an
        entry in ``mapping`` are carried over by name and must exist there.
        """
        target = ring or self.ring
        n = self.ring.nvars
        images = []
        for i, name in enumerate(self.ring.names):
            if name in mapping:
                images.append(target.coerce(mapping[name]))
            elif name in target.index:
                images.append(target.var(name))
            else:
                images.append(None)
        powers: list[dict[int, Polynomial]] = [dict() for _ in range(n)]

        def power(i, e):
            cache = powers[i]
            p = cache.get(e)
            if p is None:
                base = images[i]
                if base is None:
                    raise KeyError(f"no image for variable {self.ring.names[i]!r}")
                p = base if e == 1 else power(i, e - 1) * base
                cache[e] = p
            return p

        # Monomial images of plain variables stay monomials; collect those fast.
        direct = all(img is not None and len(img.terms) == 1 and next(iter(img.terms.values())) == 1
                     for img in images if img is not None)
        if direct and all(img is not None for img in images):
            shifts = [next(iter(img.terms)) for img in images]
            out: dict[int, Rational] = {}
            for m, c in self.terms.items():
                k = 0
                for i, e in enumerate(_unpack(m, n)):
                    if e:
                        k += shifts[i] * e
                out[k] = out.get(k, 0) + c
            return Polynomial(target, {m: c for m, c in out.items() if c})

        acc: dict[int, Rational] = {}
        for m, c in self.terms.items():
            term = None
            for i, e in enumerate(_unpack(m, n)):
                if e:
                    p = power(i, e)
                    term = p if term is None else term * p
            if term is None:
                acc[0] = acc.get(0, 0) + c
            else:
                get = acc.get
                for k, v in term.terms.items():
                    acc[k] = get(k, 0) + v * c
        return Polynomial(target, {m: c for m, c in acc.items() if c})

    def to_ring(self, ring: RingContext) -> "Polynomial":
        """Re-express in another ring holding every variable that occurs (by name)."""
        if ring == self.ring:
            return self
        return self.substitute({}, ring)

    def evaluate(self, point: Mapping[str, Coeff]) -> Rational:
        """Value at a full rational point."""
        vals = []
        for name in self.ring.names:
            vals.append(to_rational(point[name]) if name in point else None)
        n = self.ring.nvars
        total = mpq(0)
        for m, c in self.terms.items():
            t = c
            for i, e in enumerate(_unpack(m, n)):
                if e:
                    v = vals[i]
                    if v is None:
                        raise KeyError(f"no value for {self.ring.names[i]!r}")
                    t = t * v ** e
            total += t
        return total

    def homogeneous_components(self, weights: Sequence[Sequence[int]] | None = None) -> dict[tuple, "Polynomial"]:
        """Split by (multi)degree. Default grading is total degree."""
        n = self.ring.nvars
        parts: dict[tuple, dict[int, Rational]] = {}
        for m, c in self.terms.items():
            exps = _unpack(m, n)
            if weights is None:
                key = (sum(exps),)
            else:
                key = tuple(sum(w * e for w, e in zip(row, exps)) for row in weights)
            parts.setdefault(key, {})[m] = c
        return {k: Polynomial(self.ring, v) for k, v in parts.items()}

    def content_normalized(self) -> "Polynomial":
        """Scalar multiple with leading coefficient 1 (zero stays zero)."""
        return self.monic()

    # text
    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"Polynomial({to_text(self)!r})"


def _monomial_text(exps: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for e, name in zip(exps, names):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def to_text(f: Polynomial) -> str:
    """Canonical text: grevlex-descending terms, integers and a/b coefficients."""
    if not f.terms:
        return "0"
    names = f.ring.names
    n = f.ring.nvars
    out = []
    for k, (m, c) in enumerate(f.sorted_terms()):
        mono = _monomial_text(_unpack(m, n), names)
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{format_rational(a)}*{mono}"
        else:
            body = format_rational(a)
        if k == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def parse_polynomial(ring: RingContext, text: str) -> Polynomial:
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}") from exc

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return ring.const(node.value)
        if isinstance(node, ast.Name):
            if node.id not in ring.index:
                raise ParseError(f"unknown variable {node.id!r}")
            return ring.var(node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            left = walk(node.left)
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise ParseError("exponents must be integer literals")
                return left ** node.right.value
            right = walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if not right.is_constant() or right.is_zero():
                    raise ParseError("division only by nonzero constants")
                return left.scale(1 / right.constant_value())
        raise ParseError(f"unsupported syntax in {text!r}")

    return walk(tree)


# division by a single polynomial

def divide_with_remainder(f: Polynomial, g: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Multivariate division of f by g in grevlex: f = q*g + r, no term of r
    divisible by the leading monomial of g. The remainder is the normal form
    of f modulo the principal ideal (g)."""
    f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ring = f.ring
    n = ring.nvars
    G = ring.guard
    lm, lc = g.leading_term()
    inv_lc = 1 / lc
    tail = [(m, c) for m, c in g.terms.items() if m != lm]

    if not tail:
        q, r = {}, {}
        for m, c in f.terms.items():
            if ((m | G) - lm) & G == G:
                q[m - lm] = c * inv_lc
            else:
                r[m] = c
        return Polynomial(ring, q), Polynomial(ring, r)

    p = dict(f.terms)
    heap = [(_heap_key(m, n), m) for m in p]
    heap.sort()
    queued = set(p)
    q: dict[int, Rational] = {}
    r: dict[int, Rational] = {}
    while heap:
        _, m = heappop(heap)
        queued.discard(m)
        c = p.pop(m, None)
        if not c:
            continue
        if ((m | G) - lm) & G == G:
            qm = m - lm
            qc = c * inv_lc
            q[qm] = q.get(qm, 0) + qc
            for tm, tc in tail:
                k = qm + tm
                v = p.get(k, 0) - qc * tc
                if v:
                    p[k] = v
                    if k not in queued:
                        queued.add(k)
                        heappush(heap, (_heap_key(k, n), k))
                else:
                    p.pop(k, None)
        else:
            r[m] = c
    return Polynomial(ring, {m: c for m, c in q.items() if c}), Polynomial(ring, r)


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    """Quotient f/g, raising NotDivisible unless g divides f exactly."""
    q, r = divide_with_remainder(f, g)
    if r:
        raise NotDivisible(f"{g} does not divide the dividend (remainder has {len(r)} terms)")
    return q


# Laurent polynomials in one distinguished variable

class LaurentPolynomial:
    """``poly * r**shift`` where ``r`` is a variable of ``poly.ring``.

    Normal form: either zero with shift 0, or the lowest power of r in
    ``poly`` is r^0, so equal Laurent polynomials have equal (poly, shift).
    """

    __slots__ = ("poly", "shift", "r")

    def __init__(self, poly: Polynomial, shift: int = 0, r: str = "r"):
        if r not in poly.ring.index:
            raise KeyError(f"distinguished variable {r!r} missing from ring")
        if poly.is_zero():
            shift = 0
        else:
            i = poly.ring.index[r]
            low = min((m >> (BITS * i)) & FIELD for m in poly.terms)
            if low:
                poly = Polynomial(poly.ring, {m - (low << (BITS * i)): c for m, c in poly.terms.items()})
                shift += low
        self.poly = poly
        self.shift = shift
        self.r = r

    @property
    def ring(self) -> RingContext:
        return self.poly.ring

    @classmethod
    def of(cls, value, ring: RingContext, r: str = "r") -> "LaurentPolynomial":
        if isinstance(value, LaurentPolynomial):
            return value
        return cls(ring.coerce(value), 0, r)

    def _lift(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            if other.ring != self.ring or other.r != self.r:
                raise RingMismatch("Laurent operands in different rings")
            return other
        if isinstance(other, Polynomial) or isinstance(other, (int, Fraction, Rational)):
            return LaurentPolynomial(self.ring.coerce(other), 0, self.r)
        return NotImplemented

    def _rpow(self, k: int) -> Polynomial:
        return self.ring.var(self.r) ** k

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        lo = min(self.shift, other.shift)
        a = self.poly * self._rpow(self.shift - lo)
        b = other.poly * self._rpow(other.shift - lo)
        return LaurentPolynomial(a + b, lo, self.r)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial(-self.poly, self.shift, self.r)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return LaurentPolynomial(self.poly * other.poly, self.shift + other.shift, self.r)

    __rmul__ = __mul__

    def is_monomial(self) -> bool:
        return len(self.poly.terms) == 1

    def inverse(self) -> "LaurentPolynomial":
        """Inverse of a single term c*r^k (the only invertible elements here)."""
        if not self.is_monomial() or self.poly.variables() not in ((), (self.r,)):
            raise NotDivisible("only c*r^k is invertible")
        c = self.poly.constant_term()
        if not c:
            raise NotDivisible("only c*r^k is invertible")
        return LaurentPolynomial(self.ring.const(1 / c), -self.shift, self.r)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Rational)) and not isinstance(other, bool):
            return LaurentPolynomial(self.poly.scale(1 / to_rational(other)), self.shift, self.r)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if other.is_monomial() and other.poly.variables() in ((), (self.r,)):
            return self * other.inverse()
        q = exact_divide(self.poly, other.poly)
        return LaurentPolynomial(q, self.shift - other.shift, self.r)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return LaurentPolynomial(self.poly ** k, self.shift * k, self.r)

    def __eq__(self, other):
        if isinstance(other, LaurentPolynomial):
            return self.r == other.r and self.poly == other.poly and self.shift == other.shift
        if isinstance(other, (Polynomial, int, Fraction, Rational)):
            return self == self._lift(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.poly, self.shift, self.r))

    def __bool__(self):
        return bool(self.poly)

    def r_exponent_range(self) -> tuple[int, int]:
        if self.poly.is_zero():
            return (0, 0)
        return (self.shift, self.shift + self.poly.degree_in(self.r))

    def is_polynomial(self) -> bool:
        return self.shift >= 0

    def to_polynomial(self) -> Polynomial:
        if self.shift < 0:
            raise ValueError("negative powers of r present")
        return self.poly * self._rpow(self.shift)

    def coefficients_in_r(self) -> dict[int, Polynomial]:
        """Map r-exponent to the r-free coefficient polynomial."""
        i = self.ring.index[self.r]
        shift_bits = BITS * i
        parts: dict[int, dict[int, Rational]] = {}
        for m, c in self.poly.terms.items():
            e = (m >> shift_bits) & FIELD
            parts.setdefault(e + self.shift, {})[m - (e << shift_bits)] = c
        return {k: Polynomial(self.ring, v) for k, v in sorted(parts.items())}

    def substitute(self, mapping: Mapping[str, object]) -> "LaurentPolynomial":
        """Replace variables by Laurent polynomials in the same ring."""
        images = {k: LaurentPolynomial.of(v, self.ring, self.r) for k, v in mapping.items()}
        rimg = images.get(self.r, LaurentPolynomial(self.ring.var(self.r), 0, self.r))
        total = LaurentPolynomial(self.ring.zero(), 0, self.r)
        n = self.ring.nvars
        names = self.ring.names
        cache: dict[tuple[str, int], LaurentPolynomial] = {}

        def power(name, e):
            key = (name, e)
            if key not in cache:
                base = rimg if name == self.r else images.get(name)
                if base is None:
                    base = LaurentPolynomial(self.ring.var(name), 0, self.r)
                cache[key] = base ** e
            return cache[key]

        ri = self.ring.index[self.r]
        for m, c in self.poly.terms.items():
            term = LaurentPolynomial(self.ring.const(c), 0, self.r)
            for i, e in enumerate(_unpack(m, n)):
                if i == ri:
                    continue
                if e:
                    term = term * power(names[i], e)
            er = ((m >> (BITS * ri)) & FIELD) + self.shift
            if er:
                term = term * power(self.r, er)
            total = total + term
        return total

    def r_involution(self) -> "LaurentPolynomial":
        """r -> -r."""
        return self.substitute({self.r: -self.ring.var(self.r)})

    def __str__(self):
        if self.poly.is_zero():
            return "0"
        if self.shift == 0:
            return str(self.poly)
        pieces = []
        for e, coeff in sorted(self.coefficients_in_r().items(), reverse=True):
            rp = "" if e == 0 else (self.r if e == 1 else f"{self.r}^{e}")
            text = str(coeff)
            if not rp:
                pieces.append(f"({text})")
            elif coeff == 1:
                pieces.append(rp)
            else:
                pieces.append(f"({text})*{rp}")
        return " + ".join(pieces)

    def __repr__(self):
        return f"LaurentPolynomial({str(self)!r})"


def laurent_substitute(f, mapping: Mapping[str, object], target: RingContext | None = None,
                       r: str = "r") -> LaurentPolynomial:
    """Evaluate a polynomial or Laurent polynomial at Laurent images of its variables.

    Variables without an image are kept, so they must exist in ``target``.
    """
    if isinstance(f, LaurentPolynomial):
        if target is None or target == f.ring:
            return f.substitute(mapping)
        r = f.r
        base = f.poly
        shift = f.shift
    else:
        base, shift = f, 0
    target = target or base.ring
    images = {k: LaurentPolynomial.of(v, target, r) for k, v in mapping.items()}
    names = base.ring.names
    n = base.ring.nvars
    cache: dict[tuple[int, int], LaurentPolynomial] = {}

    def power(i, e):
        if (i, e) not in cache:
            img = images.get(names[i])
            if img is None:
                img = LaurentPolynomial(target.var(names[i]), 0, r)
            cache[(i, e)] = img ** e
        return cache[(i, e)]

    total = LaurentPolynomial(target.zero(), 0, r)
    for m, c in base.terms.items():
        term = LaurentPolynomial(target.const(c), 0, r)
        for i, e in enumerate(_unpack(m, n)):
            if e:
                term = term * power(i, e)
        total = total + term
    if shift:
        total = total * (LaurentPolynomial.of(mapping.get(r, target.var(r)), target, r) ** shift)
    return total
