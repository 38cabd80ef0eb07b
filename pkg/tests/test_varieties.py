import json
import os
import random

import pytest

from ftskey.arith import RingContext
from ftskey.fts import X_NAMES, Y_NAMES
from ftskey.reports import EquationSystem
from ftskey.varieties import checks as vc
from ftskey.varieties.generators import (
    UnknownVariety,
    VarietyId,
    dictionary,
    f22_template,
    from_template,
    generate,
)

from conftest import GOLDEN

POLY_IDS = [v.value for v in VarietyId if v.value != "P23_transform"]
TEMPLATE_IDS = ["F22", "U14", "S8_raw", "Z12", "CL10", "CL10_alt", "CL9_A4", "CL8_A3A4", "CL8_A1A3"]


def point_degree(f, names):
    return max((sum(e for e, n in zip(exps, f.ring.names) if n in names) for exps, _ in f.monomials()),
               default=0)


@pytest.mark.parametrize("vid", POLY_IDS)
def test_generated_systems_match_golden(vid):
    with open(os.path.join(GOLDEN, "varieties", f"{vid}.json")) as fh:
        golden = EquationSystem.from_json(json.load(fh))
    sys_ = generate(vid)
    assert golden.labels == sys_.labels
    assert [str(f) for f in golden.polys] == [str(f) for f in sys_.polys]


@pytest.mark.parametrize("vid", TEMPLATE_IDS)
def test_template_derived_shape(vid):
    sys_ = generate(vid)
    assert len(sys_) == 9
    pts = {"s", "t"} | set(X_NAMES) | set(Y_NAMES)
    names = set(sys_.ring.names)
    if pts <= names:
        assert all(point_degree(f, pts) <= 2 for f in sys_.polys)
        for label in ("xPy", "xQy"):
            f = sys_[label]
            assert point_degree(f, set(X_NAMES)) == 1 and point_degree(f, set(Y_NAMES)) == 1


@pytest.mark.parametrize("vid", TEMPLATE_IDS)
def test_generator_level_determinism(vid):
    assert from_template(dictionary(vid), vid).polys == generate(vid).polys


def test_f22_has_nine_equations():
    assert len(f22_template()) == 9


def test_unknown_variety():
    with pytest.raises(UnknownVariety):
        generate("nope")


# presentation equivalences

def test_cluster_dictionaries():
    res = vc.cl10_specialization_checks()
    assert [r.status for r in res] == ["pass"] * 7, [(r.check, r.status) for r in res]


def test_s8_presentations():
    assert vc.s8_presentation_check().ok


def test_equivalence_is_symmetric():
    a, b = generate("CL10"), generate("CL10_alt")
    assert vc.verify_presentation_equivalence(a, b).ok
    assert vc.verify_presentation_equivalence(b, a).ok


def test_equivalence_detects_missing_equation():
    a, b = generate("CL10"), generate("CL10_alt")
    r = vc.verify_presentation_equivalence(a, b.drop(["st"]))
    assert r.status == "inconclusive"


# charts and singular locus

@pytest.mark.parametrize("chart", vc.CHARTS)
def test_charts(chart):
    assert vc.chart_check(chart).ok


def test_singular_samples():
    r = vc.singular_samples(42)
    assert r.ok
    assert r.details["smooth_ranks"] == [4] * 5


def test_jacobian_rank_at_origin_is_zero():
    sys_ = generate("U14")
    assert vc.jacobian_rank_at(sys_, {n: 0 for n in sys_.ring.names}) == 0


# group actions

@pytest.mark.parametrize("action", vc.ACTIONS)
def test_group_actions(action):
    r = vc.group_action_check(action)
    assert r.ok, r.details


def test_z12_action_by_transvections():
    assert vc.z12_action_check("transvections").ok


def test_t8_plain_hat_convention_fails():
    assert not vc.t8_action_check("plain").ok


# S8 geometry

def test_fibers():
    res = vc.s8_fiber_checks()
    assert [r.status for r in res] == ["pass"] * 3
    assert [r.details["class"] for r in res] == ["origin", "P111", "P1xQ"]


def test_fiber_classification():
    assert vc.classify_d((0, 0, 0, 0)) == "origin"
    assert vc.classify_d((1, 0, 0, 0)) == "P111"
    assert vc.classify_d((0, 1, 0, 0)) == "P1xQ"
    assert vc.classify_d((1, 0, 0, 1)) == "P1P1P1"


def test_tangential_scroll_constant_is_locked():
    with open(os.path.join(GOLDEN, "tangential_scroll.json")) as fh:
        golden = json.load(fh)
    r = vc.tangential_scroll_check()
    assert r.ok
    assert r.details["dbeta_over_quartic"] == golden["dbeta_over_quartic"]


def test_b6_cone():
    r = vc.b6_cone_check()
    assert r.ok
    assert r.details["literal_d2_equations"] == ["UV11", "UV12", "UV13"]
    assert vc.b6_d2_zero_check().ok


def test_b6_without_cubic_correction_depends_on_d2():
    assert not vc.b6_cone_check(include_cubic=False).ok
    with pytest.raises(vc.ResidualDependence):
        vc.b6_cone_check(include_cubic=False, strict=True)


def test_z12_beta_adjoint():
    assert vc.z12_beta_adjoint_residual().is_zero()
    assert not vc.z12_beta_adjoint_residual(trace_free=False).is_zero()


# base locus

def test_base_locus_observed_generators():
    r = vc.base_locus_check_u14()
    assert r.details["residual"] == ["s*t", "t*y3", "y3^2"]
    assert r.details["same_zero_locus"]


def test_base_locus_with_y3_zeroed():
    assert vc.base_locus_check_u14(extra_zero=("y3",)).ok


def test_base_locus_wrong_table_mismatch():
    from ftskey.weights import U14_EXAMPLE
    r = vc.base_locus_check_u14({**U14_EXAMPLE, "s": 1})
    assert not r.ok
    with pytest.raises(vc.BaseLocusMismatch):
        vc.base_locus_check_u14({**U14_EXAMPLE, "s": 1}, strict=True)
