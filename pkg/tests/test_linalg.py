import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from ftskey.arith import RingContext
from ftskey.linalg import (
    BoundTooSmall,
    DimensionMismatch,
    NotSkew,
    PolyMatrix,
    adj,
    bareiss_echelon,
    cross,
    det,
    det_adj_trace,
    dot,
    macaulay_membership,
    nullspace,
    pfaffian,
    pfaffians_4x4,
    rank,
    reduce_mod_principal,
    skew_from_upper,
    span_dimension,
    wedge2,
)

small = st.integers(-6, 6)
matrix3 = st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3)


def sym_matrix(ring, prefix, n):
    return PolyMatrix(ring, [[ring.var(f"{prefix}{i}{j}") for j in range(n)] for i in range(n)])


def test_cross_is_orthogonal_symbolically():
    R = RingContext([f"u{i}" for i in range(3)] + [f"v{i}" for i in range(3)])
    u = [R.var(f"u{i}") for i in range(3)]
    v = [R.var(f"v{i}") for i in range(3)]
    w = cross(u, v)
    assert dot(u, w).is_zero() and dot(v, w).is_zero()


def test_wedge2_of_rank_one_rows_vanishes():
    R = RingContext(("a", "b", "c", "k"))
    a, b, c, k = R.gens()
    M = PolyMatrix(R, [[a, b, c], [k * a, k * b, k * c]])
    assert all(e.is_zero() for e in wedge2(M))
    assert wedge2(M.T) == wedge2(M)
    with pytest.raises(DimensionMismatch):
        wedge2(PolyMatrix(R, [[a, b], [c, k]]))


def test_adjugate_identity_symbolic():
    R = RingContext([f"m{i}{j}" for i in range(3) for j in range(3)])
    M = sym_matrix(R, "m", 3)
    d, A, t = det_adj_trace(M)
    assert M @ A == PolyMatrix.identity(R, 3).scale(d)
    assert t == R.parse("m00 + m11 + m22")


@given(matrix3, matrix3)
def test_det_multiplicative(a, b):
    R = RingContext(())
    A, B = PolyMatrix(R, a), PolyMatrix(R, b)
    assert det(A @ B) == det(A) * det(B)


def test_pfaffian_squared_is_det():
    R = RingContext([f"s{i}{j}" for i in range(4) for j in range(i + 1, 4)])
    S = skew_from_upper(R, [[R.var(f"s{i}{j}") for j in range(i + 1, 4)] for i in range(3)])
    assert pfaffian(S) ** 2 == det(S)


def test_pfaffians_4x4_syzygy():
    R = RingContext([f"s{i}{j}" for i in range(5) for j in range(i + 1, 5)])
    S = skew_from_upper(R, [[R.var(f"s{i}{j}") for j in range(i + 1, 5)] for i in range(4)])
    pf = pfaffians_4x4(S)
    # the vector of signed Pfaffians is in the kernel of S
    for row in S.rows:
        assert sum((e * p for e, p in zip(row, pf)), R.zero()).is_zero()


def test_not_skew_rejected():
    R = RingContext(("a",))
    with pytest.raises(NotSkew):
        pfaffian(PolyMatrix(R, [[0, 1], [1, 0]]))


def test_span_dimension_and_rank():
    R = RingContext(("x", "y"))
    assert span_dimension([R.parse("x"), R.parse("y"), R.parse("x + y"), R.zero()]) == 2
    assert rank([[1, 2, 3], [2, 4, 6], [0, 1, 1]]) == 2
    E, piv = bareiss_echelon([[2, 4], [1, 3]])
    assert piv == [0, 1]


def test_nullspace_exact():
    ns = nullspace([[1, 2, 3], [4, 5, 6]], 3)
    assert len(ns) == 1
    v = ns[0]
    assert all(sum(mpq(a) * b for a, b in zip(row, v)) == 0 for row in [[1, 2, 3], [4, 5, 6]])


def test_membership_certificate_verifies():
    R = RingContext(("x", "y", "z"))
    g = [R.parse("x*y - z"), R.parse("y^2 - x")]
    target = R.parse("x") * g[0] + R.parse("y + 1") * g[1]
    cert = macaulay_membership(target, g, 3)
    assert cert.found and cert.verify()


def test_membership_not_found_below_bound():
    R = RingContext(("x", "y"))
    cert = macaulay_membership(R.parse("x"), [R.parse("x^2"), R.parse("y")], 3)
    assert not cert.found


def test_membership_bound_kinds():
    R = RingContext(("x", "y"))
    g = [R.parse("x^3 - y")]
    target = R.parse("x") * g[0]
    with pytest.raises(BoundTooSmall):
        macaulay_membership(target, g, 3)
    assert macaulay_membership(target, g, 1, bound_kind="cofactor").found
    assert not macaulay_membership(target, g, 0, bound_kind="cofactor").found


def test_reduce_mod_principal():
    R = RingContext(("a", "b"))
    g = R.parse("a*b - 1")
    assert reduce_mod_principal(R.parse("a^2*b^2"), g) == R.one()
    assert adj(PolyMatrix(R, [[R.var("a"), 0], [0, R.var("b")]])) == PolyMatrix(R, [[R.var("b"), 0], [0, R.var("a")]])
