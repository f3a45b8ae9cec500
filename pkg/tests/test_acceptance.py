"""Acceptance suite: every criterion runs at its stated tolerance (exact
arithmetic throughout) and prints one pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines as the
criteria complete.
"""

import itertools
import random
import time
from fractions import Fraction
from pathlib import Path

import pytest

from arrzeta import (
    RationalFunction,
    ROUTE_DIRECT,
    ROUTE_SPECIAL_POINT,
    certify_root,
    condition_a,
    condition_b,
    condition_c,
    euler_char_proj_complement,
    indecomposable_by_euler,
    indecomposable_by_partition,
    is_indecomposable,
    parse_expression,
    point_census,
    pole_report,
    rank2_center_coefficient,
    reduced_zeta_rank3_closed_form,
    special_point,
    stv_condition,
    v_image_nonzero,
    verify_certificate,
    weight_system,
    zeta_rank2,
    zeta_rank3,
)
from arrzeta.aomoto import aomoto_cohomology

from corpus import (
    BRAID,
    GENERIC4,
    NONRED_D9,
    THREE_LINES,
    WEIGHTED_PENCIL,
    curated_reduced_rank3,
    random_rank2,
    random_reduced_rank3,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

_RANK2_SEED = 20260809
_RANK3_SEED = 20260810


class _criterion:
    """Prints exactly one ACCEPTANCE nn PASS/FAIL line and enforces the budget."""

    def __init__(self, number: int, title: str, limit: float | None = None):
        self.number, self.title, self.limit = number, title, limit

    def __enter__(self):
        self.started = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.started
        verdict = "PASS" if exc_type is None else "FAIL"
        if exc_type is None and self.limit is not None and elapsed >= self.limit:
            verdict = "FAIL"
        budget = "" if self.limit is None else f" [{elapsed:.2f}s < {self.limit:.0f}s]"
        print(f"ACCEPTANCE {self.number:2d} {verdict}  {self.title}{budget}")
        if verdict == "FAIL" and exc_type is None:
            raise AssertionError(
                f"criterion {self.number} exceeded {self.limit}s ({elapsed:.2f}s)"
            )
        return False


def rank2_corpus():
    rng = random.Random(_RANK2_SEED)
    return [random_rank2(rng) for _ in range(22)]


def rank3_corpus():
    rng = random.Random(_RANK3_SEED)
    return [random_reduced_rank3(rng) for _ in range(20)]


def test_criterion_01_nonreduced_d9_exact_reproduction():
    with _criterion(1, "degree-9 non-reduced zeta matches its display; -1/3 pole vanishes", 1.0):
        display = (FIXTURES / "zeta_display_d9.txt").read_text().strip()
        rep = zeta_rank3(NONRED_D9)
        assert rep.zeta == parse_expression(display)
        assert rep.zeta.pole_coefficient((9, 3)) == 0


def test_criterion_02_strata_fixture_arithmetic():
    with _criterion(2, "strata blocks evaluate to -56, -80, 136 at -1/2 and cancel", 1.0):
        values = []
        for i in range(3):
            text = (FIXTURES / f"strata_block_{i}.txt").read_text().strip()
            values.append(parse_expression(text).eval(Fraction(-1, 2)))
        assert values == [-56, -80, 136]
        assert sum(values) == 0


def test_criterion_03_rank2_formula_suite():
    corpus = rank2_corpus()
    with _criterion(3, f"rank-2 closed form on {len(corpus)} random arrangements; C = 8 check", 5.0):
        inv = RationalFunction.factor_inverse
        assert len(corpus) >= 20
        for arr in corpus:
            rep = zeta_rank2(arr)
            d = arr.d
            # the displayed formula, assembled independently term by term
            expected = inv(d, 2) * sum(
                (inv(m, 1) for m in arr.mults), RationalFunction.constant(2 - arr.e)
            )
            assert rep.zeta == expected
            double = any(2 * m == d for m in arr.mults)
            assert rep.flags["order2"] == double
            if not double:
                assert rep.zeta.pole_coefficient((d, 2)) == rank2_center_coefficient(arr)
        assert zeta_rank2(THREE_LINES).zeta.pole_coefficient((3, 2)) == 8


def test_criterion_04_rank3_two_route_equivalence():
    corpus = rank3_corpus()
    with _criterion(4, f"rank-3 blow-up route equals census route on {len(corpus)} arrangements", 30.0):
        assert len(corpus) >= 20
        for arr in corpus:
            rep = zeta_rank3(arr)
            assert rep.zeta == reduced_zeta_rank3_closed_form(arr)
            if arr.d > 3:
                criterion = arr.d % 3 == 0 and any(
                    3 * mw == 2 * arr.d for _, mw in point_census(arr)
                )
                assert rep.flags["order2"] == criterion
        assert zeta_rank3(BRAID).zeta.pole_coefficient((6, 3)) == 42


def test_criterion_05_pole_existence_and_sign():
    with _criterion(5, "center pole exists and its sign matches goodness", 30.0):
        checked = 0
        for arr in rank2_corpus() + rank3_corpus():
            if not is_indecomposable(arr):
                continue
            rep = pole_report(arr)
            assert rep.flags["center_pole_order"] >= 1
            if rep.flags["center_pole_order"] == 1:
                assert (rep.flags["center_sign"] == 1) == rep.flags["center_good"]
            checked += 1
        assert checked >= 20


def test_criterion_06_candidate_soundness():
    corpus = rank2_corpus() + rank3_corpus() + [NONRED_D9, BRAID, GENERIC4, THREE_LINES]
    with _criterion(6, f"actual poles inside the dense-edge candidate set on {len(corpus)} inputs"):
        for arr in corpus:
            rep = pole_report(arr)
            assert {a.value for a in rep.actual} <= {c.value for c in rep.candidates}


def test_criterion_07_decomposability_duality():
    with _criterion(7, "bipartition and Euler-characteristic decomposability agree on 100 inputs"):
        from corpus import random_central

        rng = random.Random(20260811)
        for _ in range(100):
            arr = random_central(rng)
            assert indecomposable_by_partition(arr) == indecomposable_by_euler(arr)


def test_criterion_08_certifier_completeness():
    corpus = curated_reduced_rank3()
    with _criterion(8, f"certificates found and replayed on {len(corpus)} curated arrangements", 60.0):
        assert len(corpus) >= 15
        for arr in corpus:
            cert = certify_root(arr)
            assert cert is not None
            assert cert.root == Fraction(-3, arr.d)
            ok, results = verify_certificate(arr, cert)
            assert ok, results
        g4 = certify_root(GENERIC4)
        assert g4.route == ROUTE_DIRECT and g4.h2_dim == 1


def test_criterion_09_weighted_pencil_negative():
    with _criterion(9, "no admissible pair for the high-multiplicity route on the weighted pencil"):
        sp = special_point(WEIGHTED_PENCIL)
        assert sp is not None and sp.mult == 15
        assert (
            certify_root(WEIGHTED_PENCIL, e_indices=(7,), routes=(ROUTE_SPECIAL_POINT,)) is None
        )


def test_criterion_10_cross_module_coherence():
    with _criterion(10, "nonresonance, Euler, and route coherence across modules"):
        checked_euler = checked_routes = 0
        for arr in rank3_corpus()[:10] + [GENERIC4, BRAID]:
            chi = euler_char_proj_complement(arr)
            for e in range(arr.e):
                chart = [i for i in range(arr.e) if i != e]
                for I in itertools.combinations(chart, 2):
                    ws = weight_system(arr, e, I, 3)
                    assert condition_a(ws) == stv_condition(ws)
                    a0, a1, a2 = aomoto_cohomology(ws).dims_chain
                    assert a0 - a1 + a2 == chi
                    checked_euler += 1
                    p0 = condition_b(ws)
                    if condition_a(ws) and p0 is not None and condition_c(ws, p0):
                        assert v_image_nonzero(ws)
                        checked_routes += 1
        assert checked_euler > 200 and checked_routes > 20
