from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ftskey import weights as wt
from ftskey.varieties.generators import generate


def test_u14_relation_table():
    r = wt.relation_table_check(generate("U14"), wt.U14_FREE, wt.U14_RELATIONS)
    assert r.ok, r.details
    assert r.details["dimension"] == 6


def test_cl10_relation_table():
    r = wt.relation_table_check(generate("CL10"), wt.CL10_FREE, wt.CL10_RELATIONS)
    assert r.ok, r.details


def test_wrong_relation_is_detected():
    table = {**wt.U14_RELATIONS, "s": "-x3 + y3"}
    assert not wt.relation_table_check(generate("U14"), wt.U14_FREE, table).ok


def test_not_a_free_block():
    wcs = wt.weight_constraints(generate("U14"))
    with pytest.raises(wt.NotAFreeBlock):
        wt.solve_weights(wcs, ("x1", "x2", "x3", "y1", "y3", "a11"))  # a11 = y3 - y1


@given(st.lists(st.integers(-4, 4), min_size=6, max_size=6))
def test_every_solution_makes_u14_homogeneous(free):
    wcs = wt.weight_constraints(generate("U14"))
    sol = wt.solve_weights(wcs, wt.U14_FREE)
    values = dict(zip(wt.U14_FREE, free))
    w = wt.WeightAssignment({v: sum(c * values[n] for n, c in sol.parametrization[v].items())
                             for v in generate("U14").ring.names})
    w.check(generate("U14"))


def test_example_table_degrees():
    rep = wt.graded_report(generate("U14"), wt.WeightAssignment(wt.U14_EXAMPLE))
    data = rep.to_json()
    assert Counter(data["equation_degrees"]) == Counter({"3": 4, "4": 4, "5": 1})
    assert data["delta"] == "11"
    assert data["ambient_canonical_twist"] == "-22"
    assert data["variety_canonical_twist"] == "-11"
    assert all(rep.checks.values())


def test_symbolic_bookkeeping_holds_for_all_tables():
    rep = wt.graded_report(generate("U14"), wt.symbolic_u14_weights())
    assert all(rep.checks.values()), rep.checks


def test_s8_example_table_homogeneous():
    degs = wt.WeightAssignment(wt.S8_EXAMPLE).check(generate("S8"))
    assert sorted(degs) == [3] * 6 + [4] * 3


def test_inhomogeneous_table_rejected():
    with pytest.raises(wt.NotHomogeneous):
        wt.WeightAssignment({**wt.U14_EXAMPLE, "s": 2}).check(generate("U14"))
