import random
from math import gcd

import pytest

from arrzeta import (
    Arrangement,
    CASE_COPRIME_GENERIC,
    CASE_GOOD_CENTER,
    CASE_REDUCED_SMALL_RANK,
    InvalidInputError,
    certify_center,
    certify_dense_edges,
    dense_edges,
    is_indecomposable,
    is_relatively_generic_last,
    pole_report,
    quotient,
)

from corpus import (
    BRAID,
    CONCURRENT_6_PLUS_2,
    GENERIC4,
    NONRED_D9,
    THREE_LINES,
    XYZ,
    random_reduced_rank3,
)


class TestCenter:
    def test_braid_good_center(self):
        res = certify_center(BRAID)
        assert res.outcome == "certified" and res.case == CASE_GOOD_CENTER

    def test_generic4(self):
        res = certify_center(GENERIC4)
        assert res.outcome == "certified" and res.case == CASE_GOOD_CENTER
        # the other two cases also apply and are checkable on their own
        assert gcd(3, GENERIC4.d) == 1 and is_relatively_generic_last(GENERIC4)

    def test_bad_center_uses_certificate(self):
        res = certify_center(CONCURRENT_6_PLUS_2)
        assert res.outcome == "certified" and res.case == CASE_REDUCED_SMALL_RANK
        assert res.certificate is not None

    def test_three_lines_rank2(self):
        res = certify_center(THREE_LINES)
        assert res.outcome == "certified" and res.case == CASE_GOOD_CENTER

    def test_rank2_nonreduced_bad_center_unknown(self):
        # x^3 y (x+y): ratio 2/5 at the center exceeds 1/3 on the heavy line
        arr = Arrangement.make(2, [((1, 0), 3), ((0, 1), 1), ((1, 1), 1)])
        res = certify_center(arr)
        assert res.outcome == "unknown" and res.case is None

    def test_coprime_generic_case_fires(self):
        # rank 4, d = 9: six hyperplanes through a common 2-flat make the
        # center bad, rank 4 rules out the certificate search, and gcd(4,9)=1
        # with a relatively generic hyperplane lets the last case certify
        pencil = [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1)]
        rows = [((a, b, 0, 0), 1) for a, b in pencil]
        rows += [((0, 0, 1, 0), 1), ((0, 0, 0, 1), 1), ((1, 3, 9, 27), 1)]
        arr = Arrangement.make(4, rows)
        assert is_indecomposable(arr)
        res = certify_center(arr)
        assert res.outcome == "certified" and res.case == CASE_COPRIME_GENERIC
        assert "generic_hyperplane" in res.detail

    def test_rejects_bad_input(self):
        with pytest.raises(InvalidInputError):
            certify_center(XYZ)  # decomposable
        with pytest.raises(InvalidInputError):
            certify_center(Arrangement.make(3, [((1, 0, 0), 1), ((0, 1, 0), 1)]))


class TestSweep:
    def test_braid_moderate_shortcut(self):
        rep = certify_dense_edges(BRAID)
        assert rep.verdict == "certified" and rep.moderate
        assert all(e.result.case == CASE_GOOD_CENTER for e in rep.edges)

    def test_nonreduced_d9_unknown(self):
        rep = certify_dense_edges(NONRED_D9)
        assert rep.verdict == "unknown" and not rep.moderate
        by_key = {e.edge.key: e.result.outcome for e in rep.edges}
        assert by_key[(0, 3, 4)] == "unknown"  # the (1,2,4)-multiplicity edge
        assert by_key[(0, 1, 2, 3, 4)] == "unknown"  # the center
        assert by_key[(0, 1, 2)] == "certified"

    def test_bad_center_d8(self):
        rep = certify_dense_edges(CONCURRENT_6_PLUS_2)
        assert rep.verdict == "certified" and not rep.moderate
        center = next(e for e in rep.edges if e.edge.codim == 3)
        assert center.result.case == CASE_REDUCED_SMALL_RANK

    def test_affine_input(self):
        # x(x-1)y(x-y): the origin carries three of the four affine lines and
        # is the only dense point; the parallel pair never meets
        arr = Arrangement.make(
            2, [((1, 0), 0, 1), ((1, 0), -1, 1), ((0, 1), 0, 1), ((1, -1), 0, 1)]
        )
        rep = certify_dense_edges(arr)
        assert rep.verdict == "certified"
        points = [e for e in rep.edges if e.edge.codim == 2]
        assert len(points) == 1 and points[0].edge.key == (0, 2, 3)
        assert points[0].result.case == CASE_GOOD_CENTER

    def test_rank4_reduced_small_edges(self):
        arr = Arrangement.make(
            4,
            [((1, 0, 0, 0), 1), ((0, 1, 0, 0), 1), ((0, 0, 1, 0), 1), ((0, 0, 0, 1), 1),
             ((1, 1, 0, 0), 1), ((0, 0, 1, 1), 1), ((1, 1, 1, 1), 1)],
        )
        rep = certify_dense_edges(arr)
        for rec in rep.edges:
            if rec.edge.codim <= 3:
                q = quotient(arr, rec.edge)
                assert q.is_reduced and q.rank <= 3
                assert rec.result.outcome == "certified"

    def test_monotone_pure_fold(self):
        rep1 = certify_dense_edges(BRAID)
        rep2 = certify_dense_edges(BRAID)
        assert rep1.to_dict() == rep2.to_dict()

    def test_case1_sign_coherence(self):
        # where the good-center case fires on a reduced rank-3 quotient and the
        # center pole is simple, the zeta coefficient there is positive
        rng = random.Random(77)
        checked = 0
        for _ in range(8):
            arr = random_reduced_rank3(rng)
            if not is_indecomposable(arr):
                continue
            for rec in certify_dense_edges(arr).edges:
                if rec.edge.codim != 3 or rec.result.case != CASE_GOOD_CENTER:
                    continue
                q = quotient(arr, rec.edge)
                rep = pole_report(q)
                if rep.flags["center_pole_order"] == 1:
                    assert rep.flags["center_coefficient"] > 0
                    checked += 1
        assert checked >= 3
