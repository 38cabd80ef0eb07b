"""Named check batteries shared by the command line and the acceptance tests.

A battery is an ordered list of ``(name, thunk)`` pairs; every thunk returns a
list of CheckResult whose names are prefixed by the battery entry name, so the
merged report can be sorted by check name regardless of run order.
"""

from __future__ import annotations

import os
import random
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from typing import Callable, Sequence

from gmpy2 import mpq

from .fts import X_NAMES, FtsSystem, diagonal_example, random_pair
from .fts_checks import (
    SEGRE_EQUATIONS,
    axiom_check,
    construction_identities,
    delta_span_check,
    equations_match_check,
    identity_suite,
    peirce_check,
    streg_consistency,
)
from .reports import FAIL, INCONCLUSIVE, PASS, CheckResult

Thunk = Callable[[], list[CheckResult]]
SUITES = ("axioms", "identities", "charts", "actions", "fibers", "weights", "varieties")


class UnknownSuite(ValueError):
    pass


def seeded_pairs(seed: int, count: int) -> list[FtsSystem]:
    rng = random.Random(seed)
    return [random_pair(rng) for _ in range(count)]


def _prefixed(prefix: str, results: Sequence[CheckResult], details: dict | None = None) -> list[CheckResult]:
    out = []
    for r in results:
        r.check = f"{prefix}: {r.check}"
        if details:
            r.details = {**details, **r.details}
        out.append(r)
    return out


def _probe_with_nonzero_norm(fts: FtsSystem, rng: random.Random) -> list:
    while True:
        probe = [rng.randint(-3, 3) for _ in range(3)]
        if fts.Nx.evaluate(dict(zip(X_NAMES, probe))):
            return probe


def _pair_details(fts: FtsSystem) -> dict:
    return {"P": [[str(e) for e in row] for row in fts.P], "Q": [[str(e) for e in row] for row in fts.Q]}


# the FTS batteries

def axioms_battery(pairs: Sequence[FtsSystem] | None = None, seed: int = 42, count: int = 5) -> list[tuple[str, Thunk]]:
    subjects = list(pairs) if pairs is not None else [diagonal_example()] + seeded_pairs(seed, count)
    out = []
    for i, f in enumerate(subjects):
        name = "axioms/diagonal" if f.name == "diagonal" else f"axioms/{f.name if pairs is not None else f'seed{seed}-pair{i}'}"
        out.append((name, lambda f=f, name=name: _prefixed(name, axiom_check(f), _pair_details(f))))
    return out


def identities_battery(pairs: Sequence[FtsSystem] | None = None, seed: int = 42, count: int = 5,
                       parametric: bool = True, bound: int | None = None) -> list[tuple[str, Thunk]]:
    bound = 4 if bound is None else bound
    from .varieties.generators import f22_fts
    diag = diagonal_example()
    if pairs is not None:
        subjects = [(f.name, f) for f in pairs]
    else:
        subjects = [("diagonal", diag)] + [(f"seed{seed}-pair{i}", f)
                                           for i, f in enumerate(seeded_pairs(seed, count))]
    out: list[tuple[str, Thunk]] = []
    for tag, f in subjects:
        def run(f=f, tag=tag):
            res = construction_identities(f) + identity_suite(f)
            if f.is_rational() and f.dbeta:
                res.append(peirce_check(f))
            return _prefixed(f"identities/{tag}", res, _pair_details(f))
        out.append((f"identities/{tag}", run))
    if pairs is None:
        if parametric:
            out.append(("identities/parametric",
                        lambda: _prefixed("identities/parametric", construction_identities(f22_fts()))))
        out.append(("identities/diagonal-printed-equations", lambda: _prefixed(
            "identities/diagonal-printed-equations",
            [equations_match_check(diag, SEGRE_EQUATIONS, (mpq(-1, 3), mpq(-1, 3)))])))
        streg_subjects = [("diagonal", diag)] + [(f"seed{seed}-pair{i}", f)
                                                 for i, f in enumerate(seeded_pairs(seed, 2))]
        for tag, f in streg_subjects:
            out.append((f"identities/{tag}-strict-regularity",
                        lambda f=f, tag=tag: _prefixed(f"identities/{tag}-strict-regularity",
                                                       [streg_consistency(f, bound)])))
        out.append(("identities/diagonal-strict-regularity-without-st", lambda: _negative(
            "identities/diagonal-strict-regularity-without-st", streg_consistency(diag, bound, drop=("st",)))))
        out.append(("identities/diagonal-delta-span",
                    lambda: _prefixed("identities/diagonal-delta-span", [delta_span_check(diag, (1, 1, 1))])))
        rng = random.Random(seed)
        for i, f in enumerate(seeded_pairs(seed, 3)):
            probe = _probe_with_nonzero_norm(f, rng)
            name = f"identities/seed{seed}-pair{i}-delta-span"
            out.append((name, lambda f=f, probe=probe, name=name: _prefixed(name, [delta_span_check(f, probe)])))
    return out


def _negative(name: str, r: CheckResult) -> list[CheckResult]:
    """A negative control passes when the underlying check fails."""
    inner = r.status
    r.status = PASS if inner != PASS else FAIL
    r.details = {"negative_control": True, "underlying_status": inner, **r.details}
    return _prefixed(name, [r])


# the variety batteries

def charts_battery(seed: int = 42, bound: int | None = None) -> list[tuple[str, Thunk]]:
    from .varieties.checks import CHARTS, chart_check, singular_samples
    out = [(f"charts/{c}", lambda c=c: [chart_check(c, 4 if bound is None else bound)]) for c in CHARTS]
    out.append(("charts/singular-samples", lambda: [singular_samples(seed)]))
    return out


def actions_battery() -> list[tuple[str, Thunk]]:
    from .varieties import checks as vc
    return [
        ("actions/U14", vc.u14_action_checks),
        ("actions/S8", vc.s8_action_checks),
        ("actions/T8", lambda: [vc.t8_action_check()]),
        ("actions/Z12", lambda: [vc.z12_action_check()]),
    ]


def fibers_battery() -> list[tuple[str, Thunk]]:
    from .varieties import checks as vc
    return [
        ("fibers/S8", vc.s8_fiber_checks),
        ("fibers/tangential-scroll", lambda: [vc.tangential_scroll_check()]),
    ]


def weights_battery() -> list[tuple[str, Thunk]]:
    from . import weights as wt
    from .varieties import checks as vc
    from .varieties.generators import generate

    def example_degrees():
        w = wt.WeightAssignment(wt.U14_EXAMPLE)
        return [wt.graded_check(generate("U14"), w, "weights:U14 example table", expected={
            "equation_degrees": ["3", "3", "3", "3", "4", "4", "4", "4", "5"], "delta": "11",
            "ambient_canonical_twist": "-22", "variety_canonical_twist": "-11"})]

    def symbolic_degrees():
        return [wt.graded_check(generate("U14"), wt.symbolic_u14_weights(), "weights:U14 symbolic table")]

    def s8_example():
        w = wt.WeightAssignment(wt.S8_EXAMPLE)
        try:
            degs = w.check(generate("S8"))
        except wt.NotHomogeneous as e:
            return [CheckResult("weights:S8 example table", FAIL, 1, {"not_homogeneous": str(e)})]
        return [CheckResult("weights:S8 example table", PASS, 0, {"degrees": [str(d) for d in degs]})]

    return [
        ("weights/U14-relations", lambda: [wt.relation_table_check(generate("U14"), wt.U14_FREE, wt.U14_RELATIONS)]),
        ("weights/CL10-relations", lambda: [wt.relation_table_check(generate("CL10"), wt.CL10_FREE,
                                                                    wt.CL10_RELATIONS)]),
        ("weights/U14-example", example_degrees),
        ("weights/U14-symbolic", symbolic_degrees),
        ("weights/S8-example", s8_example),
        ("weights/U14-base-locus", lambda: [vc.base_locus_check_u14()]),
    ]


def variety_battery(vid: str, bound: int | None = None) -> list[tuple[str, Thunk]]:
    """Checks tied to one variety id."""
    from .varieties import checks as vc
    from .varieties.generators import VarietyId, generate, specialized_cl10
    try:
        vid = VarietyId(vid).value
    except ValueError:
        raise UnknownSuite(f"unknown variety {vid}") from None

    def shape():
        if vid == "P23_transform":
            from .varieties.papadakis import papadakis_report
            return [papadakis_report()]
        sys_ = generate(vid)
        return [CheckResult(f"generated:{vid}", PASS, 0,
                            {"equations": len(sys_), "variables": len(sys_.ring.names),
                             "max_degree": sys_.max_degree()})]

    out = [(f"variety/{vid}/generated", shape)]
    by_name = {
        "CL10": ["dictionary:CL10_alt"], "CL10_alt": ["dictionary:CL10_alt"],
        "CL9_A4": ["dictionary:CL9_A4"], "CL8_A3A4": ["dictionary:CL8_A3A4", "dictionary:CL8_A3A4~S8"],
        "CL8_A1A4_T8": ["dictionary:CL8_A1A4", "dictionary:CL8_A1A4~T8"], "CL8_A1A3": ["dictionary:CL8_A1A3"],
    }
    if vid in by_name:
        wanted = by_name[vid]

        def dictionaries():
            return [r for r in _cluster_checks(3 if bound is None else bound) if r.check in wanted]
        out.append((f"variety/{vid}/dictionaries", dictionaries))
    if vid in ("S8", "S8_raw"):
        out.append((f"variety/{vid}/presentation", lambda: [vc.s8_presentation_check(3 if bound is None else bound)]))
    if vid == "B6":
        out.append(("variety/B6/cone", lambda: [vc.b6_cone_check()]))
        out.append(("variety/B6/cone-without-cubic-correction",
                    lambda: _negative("variety/B6/cone-without-cubic-correction",
                                      vc.b6_cone_check(include_cubic=False))))
        out.append(("variety/B6/d2-zero-agreement", lambda: [vc.b6_d2_zero_check()]))
    if vid == "Z12":
        out.append(("variety/Z12/beta-adjoint", lambda: [vc.z12_beta_adjoint_check()]))
        out.append(("variety/Z12/beta-adjoint-free-trace",
                    lambda: _negative("variety/Z12/beta-adjoint-free-trace",
                                      vc.z12_beta_adjoint_check(trace_free=False))))
    return out


_CLUSTER_LOCK = threading.Lock()


@lru_cache(maxsize=None)
def _cluster_results(bound: int) -> tuple[CheckResult, ...]:
    from .varieties.checks import cl10_specialization_checks
    return tuple(cl10_specialization_checks(bound))


def _cluster_checks(bound: int) -> list[CheckResult]:
    """The cluster dictionary checks run once and are shared by several ids."""
    with _CLUSTER_LOCK:
        done = _cluster_results(bound)
    return [CheckResult(r.check, r.status, r.residual_terms, dict(r.details), r.seed) for r in done]


def battery(suite: str, seed: int = 42, pairs: Sequence[FtsSystem] | None = None,
            bound: int | None = None) -> list[tuple[str, Thunk]]:
    if suite == "axioms":
        return axioms_battery(pairs, seed)
    if suite == "identities":
        return identities_battery(pairs, seed, bound=bound)
    if suite == "charts":
        return charts_battery(seed, bound)
    if suite == "actions":
        return actions_battery()
    if suite == "fibers":
        return fibers_battery()
    if suite == "weights":
        return weights_battery()
    if suite == "varieties":
        from .varieties.generators import VarietyId
        return [e for v in VarietyId for e in variety_battery(v.value, bound)]
    if suite.startswith("variety:"):
        return variety_battery(suite.split(":", 1)[1], bound)
    if suite == "all":
        return [e for s in SUITES for e in battery(s, seed, pairs, bound)]
    raise UnknownSuite(f"unknown suite {suite}")


def _timed(thunk: Thunk) -> list[CheckResult]:
    start = time.perf_counter()
    try:
        res = thunk()
    except Exception as e:  # a crashing check is reported, not propagated
        res = [CheckResult("error", FAIL, 1, {"exception": type(e).__name__, "message": str(e)})]
    ms = round((time.perf_counter() - start) * 1000 / max(len(res), 1), 3)
    for r in res:
        r.duration_ms = ms
    return res


def thread_count(requested: int | None = None) -> int:
    if requested:
        return max(1, requested)
    env = os.environ.get("FTS_THREADS")
    return max(1, int(env)) if env and env.isdigit() else 1


def run_battery(entries: Sequence[tuple[str, Thunk]], threads: int | None = None) -> list[CheckResult]:
    """Run every entry and merge the results in check-name order."""
    n = thread_count(threads)
    if n == 1:
        chunks = [_timed(t) for _, t in entries]
    else:
        with ThreadPoolExecutor(max_workers=n) as pool:
            chunks = list(pool.map(lambda e: _timed(e[1]), entries))
    results = []
    for (name, _), chunk in zip(entries, chunks):
        for r in chunk:
            if not r.check.startswith(name):
                r.check = f"{name}: {r.check}"
            results.append(r)
    return sorted(results, key=lambda r: r.check)


def overall_status(results: Sequence[CheckResult]) -> str:
    if any(r.status == FAIL for r in results):
        return FAIL
    if any(r.status == INCONCLUSIVE for r in results):
        return INCONCLUSIVE
    return PASS
