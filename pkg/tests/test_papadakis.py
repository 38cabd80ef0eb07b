import pytest

from ftskey.arith import LaurentPolynomial
from ftskey.linalg import PolyMatrix, det
from ftskey.varieties.papadakis import (
    determinant_with_rows,
    degeneration_check,
    involution_report,
    p23_ring,
    papadakis_images,
    papadakis_system,
)


@pytest.fixture(scope="module")
def system():
    return papadakis_system()


def test_ring_is_27_space_plus_square_root():
    R = p23_ring()
    assert len(R.names) == 27
    assert "z" not in R.names and "r" in R.names


def test_dx_is_the_displayed_determinant():
    R = p23_ring()
    v = R.var
    X = [v("X1"), v("X2"), v("X3")]
    rows = [X] + [[v(f"a23_{k}"), -v(f"a13_{k}"), v(f"a12_{k}")] for k in (1, 2)]
    assert determinant_with_rows(R, X) == det(PolyMatrix(R, rows))


def test_images_of_x_and_y():
    R = p23_ring()
    im = papadakis_images(R)
    r = LaurentPolynomial(R.var("r"))
    assert im["x1"] == r * R.var("X1") + R.var("Y1")
    assert im["y1"] == -(r * R.var("X1")) + R.var("Y1")
    assert im["p12"].r_exponent_range() == (-1, 0)


def test_r_ranges(system):
    ranges = system.r_ranges()
    assert ranges["st"] == (-2, 2)
    assert ranges["xPy"] == (0, 2) and ranges["xQy"] == (0, 2)
    assert all(ranges[l] == (-1, 2) for l in ("sx1", "sx2", "sx3", "ty1", "ty2", "ty3"))


def test_degeneration_to_f22():
    assert degeneration_check().ok


def test_involution_is_reported(system):
    rep = involution_report()
    # observed: r -> -r swaps the sx and ty blocks and fixes the rest
    assert rep["r"]["images"]["sx1"] == "+ty1"
    assert rep["r"]["images"]["st"] == "+st"
