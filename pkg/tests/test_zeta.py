import random
from fractions import Fraction

import pytest

from arrzeta import (
    Arrangement,
    InvalidInputError,
    RationalFunction,
    UnsupportedError,
    build_lattice,
    candidate_poles,
    is_indecomposable,
    parse_expression,
    point_census,
    pole_report,
    rank2_center_coefficient,
    rank3_center_coefficient,
    reduced_zeta_rank3_closed_form,
    zeta_rank1,
    zeta_rank2,
    zeta_rank3,
)

from corpus import (
    BRAID,
    CONCURRENT_5_PLUS_2,
    GENERIC4,
    NONRED_D9,
    THREE_LINES,
    X2Y_XPY,
    XY,
    XYZ,
    random_rank2,
    random_reduced_rank3,
)

inv = RationalFunction.factor_inverse

D9_DISPLAY = (
    "1/(9s+3) * (1 - 2/(s+1) - 1/(2s+1) - 1/(4s+1)"
    " + (-1 + 3/(s+1))/(3s+2)"
    " + (-1 + 1/(s+1) + 1/(2s+1) + 1/(4s+1))/(7s+2)"
    " + 2/(s+1)*(1/(2s+1) + 1/(4s+1)))"
)


class TestCandidates:
    def test_nonreduced_d9(self):
        values = sorted(str(c.value) for c in candidate_poles(NONRED_D9))
        assert sorted(["-1", "-1/2", "-1/4", "-2/3", "-2/7", "-1/3"]) == values

    def test_xyz(self):
        assert [str(c.value) for c in candidate_poles(XYZ)] == ["-1"]

    def test_braid(self):
        assert sorted(str(c.value) for c in candidate_poles(BRAID)) == ["-1", "-1/2", "-2/3"]

    def test_witness_and_modulus(self):
        by_value = {c.value: c for c in candidate_poles(NONRED_D9)}
        c = by_value[Fraction(-2, 7)]
        assert c.edge.key == (0, 3, 4) and c.modulus == 7


def test_candidates_affine_input():
    # x(x-1)y(x-y): the affine triple point at the origin contributes -2/3
    arr = Arrangement.make(
        2, [((1, 0), 0, 1), ((1, 0), -1, 1), ((0, 1), 0, 1), ((1, -1), 0, 1)]
    )
    values = {str(c.value) for c in candidate_poles(arr)}
    assert values == {"-1", "-2/3"}


class TestRank1:
    @pytest.mark.parametrize("m", [1, 2, 4])
    def test_values(self, m):
        assert zeta_rank1(m) == inv(m, 1)


class TestRank2:
    def test_three_lines(self):
        rep = zeta_rank2(THREE_LINES)
        assert str(rep.zeta) == "(-s + 2)/((s + 1)·(3s + 2))"
        assert rep.zeta.pole_coefficient((3, 2)) == 8
        assert rank2_center_coefficient(THREE_LINES) == 8

    def test_normal_crossing(self):
        assert zeta_rank2(XY).zeta == inv(1, 1, power=2)

    def test_double_pole(self):
        rep = zeta_rank2(X2Y_XPY)
        assert rep.zeta.pole_order(Fraction(-1, 2)) == 2
        assert rep.flags["order2"] and rep.flags["order2_criterion"]

    def test_wrong_rank(self):
        with pytest.raises(InvalidInputError):
            zeta_rank2(XYZ)

    def test_random_suite(self):
        rng = random.Random(101)
        for _ in range(25):
            arr = random_rank2(rng)
            rep = zeta_rank2(arr)
            d = arr.d
            # display formula assembled independently
            expected = inv(d, 2) * sum(
                (inv(m, 1) for m in arr.mults), RationalFunction.constant(2 - arr.e)
            )
            assert rep.zeta == expected
            criterion = any(2 * m == d for m in arr.mults)
            assert rep.flags["order2"] == criterion == rep.flags["order2_criterion"]
            if not criterion:
                assert rep.zeta.pole_coefficient((d, 2)) == rank2_center_coefficient(arr)


class TestRank3:
    def test_xyz(self):
        assert zeta_rank3(XYZ).zeta == inv(1, 1, power=3)

    def test_nonreduced_d9_display(self):
        rep = zeta_rank3(NONRED_D9)
        assert rep.zeta == parse_expression(D9_DISPLAY)
        assert rep.zeta.pole_coefficient((9, 3)) == 0
        assert rep.zeta.pole_order(Fraction(-1, 3)) == 0

    def test_nonreduced_d9_vanishing_seen_in_summed_form(self):
        phi = parse_expression("9s+3") * zeta_rank3(NONRED_D9).zeta
        assert phi.eval(Fraction(-1, 3)) == 0

    def test_braid_coefficient(self):
        rep = zeta_rank3(BRAID)
        assert rep.zeta.pole_coefficient((6, 3)) == 42
        assert rank3_center_coefficient(point_census(BRAID), 6) == 42
        assert Fraction(-1, 2) in {a.value for a in rep.actual}

    def test_closed_form_equivalence_random(self):
        rng = random.Random(202)
        for _ in range(22):
            arr = random_reduced_rank3(rng)
            rep = zeta_rank3(arr)
            assert rep.zeta == reduced_zeta_rank3_closed_form(arr)
            if arr.d > 3 and rep.flags["center_pole_order"] == 1:
                expected = rank3_center_coefficient(point_census(arr), arr.d)
                assert rep.zeta.pole_coefficient((arr.d, 3)) == expected

    def test_order2_criterion_random(self):
        rng = random.Random(203)
        for _ in range(12):
            arr = random_reduced_rank3(rng)
            if arr.d == 3:
                continue
            rep = zeta_rank3(arr)
            criterion = arr.d % 3 == 0 and any(
                3 * mw == 2 * arr.d for _, mw in point_census(arr)
            )
            assert rep.flags["order2"] == criterion == rep.flags["order2_criterion"]

    def test_order2_positive_case(self):
        # four concurrent lines plus two generic ones: d = 6 with a point of
        # multiplicity 4 = 2d/3, so the center pole -1/2 has order exactly 2
        from corpus import _pencil_plus

        arr = _pencil_plus([(0, 0, 1), (1, 1, 1)], 4)
        rep = zeta_rank3(arr)
        assert rep.flags["order2"] and rep.flags["order2_criterion"]
        assert rep.zeta.pole_order(Fraction(-1, 2)) == 2
        assert rep.flags["center_coefficient"] is None

    def test_double_point_merge_identity(self):
        # replacing a double point's blow-up term with the plain product
        # 1/((m_i s + 1)(m_j s + 1)) leaves the canonical form unchanged
        for arr in (NONRED_D9, BRAID):
            lat = build_lattice(arr)
            doubles = [p for p in lat.edges_of_codim(2) if len(p.indices) == 2]
            assert doubles
            p = doubles[0]
            i, j = sorted(p.indices)
            mi, mj = arr.mults[i], arr.mults[j]
            blowup_term = (inv(mi, 1) + inv(mj, 1)) * inv(p.mult, 2)
            assert blowup_term == inv(mi, 1) * inv(mj, 1)

    def test_wrong_rank(self):
        with pytest.raises(InvalidInputError):
            zeta_rank3(THREE_LINES)


class TestPoleReport:
    def test_braid_center(self):
        rep = pole_report(BRAID)
        assert rep.flags["center_good"] and rep.flags["center_sign"] == 1
        assert rep.flags["center_coefficient"] == 42

    def test_bad_center_negative(self):
        rep = pole_report(CONCURRENT_5_PLUS_2)
        assert not rep.flags["center_good"]
        assert rep.flags["center_pole_order"] == 1
        assert rep.flags["center_coefficient"] < 0

    def test_three_lines(self):
        rep = pole_report(THREE_LINES)
        assert rep.flags["center_coefficient"] == 8 and rep.flags["center_good"]

    def test_rank1(self):
        arr = Arrangement.make(1, [((1,), 3)])
        rep = pole_report(arr)
        assert rep.zeta == inv(3, 1)
        assert rep.flags["center_pole_order"] == 1

    def test_rank4_rejected(self):
        r4 = Arrangement.make(
            4,
            [((1, 0, 0, 0), 1), ((0, 1, 0, 0), 1), ((0, 0, 1, 0), 1),
             ((0, 0, 0, 1), 1), ((1, 1, 1, 1), 1)],
        )
        with pytest.raises(UnsupportedError):
            pole_report(r4)

    def test_non_essential_uses_essentialization(self):
        xy_in_3 = Arrangement.make(3, [((1, 0, 0), 1), ((0, 1, 0), 1)])
        assert pole_report(xy_in_3).zeta == inv(1, 1, power=2)

    def test_existence_and_sign_dichotomy_rank2(self):
        rng = random.Random(301)
        checked = 0
        for _ in range(40):
            arr = random_rank2(rng)
            if not is_indecomposable(arr):
                continue
            rep = pole_report(arr)
            order = rep.flags["center_pole_order"]
            assert order >= 1
            if order == 1:
                assert (rep.flags["center_sign"] == 1) == rep.flags["center_good"]
                checked += 1
        assert checked >= 20

    def test_existence_and_sign_dichotomy_rank3(self):
        rng = random.Random(302)
        checked = 0
        for _ in range(25):
            arr = random_reduced_rank3(rng)
            if not is_indecomposable(arr):
                continue
            rep = pole_report(arr)
            assert rep.flags["center_pole_order"] >= 1
            if rep.flags["center_pole_order"] == 1:
                assert (rep.flags["center_sign"] == 1) == rep.flags["center_good"]
                checked += 1
        assert checked >= 10

    def test_candidate_soundness(self):
        rng = random.Random(303)
        corpus = [XYZ, XY, THREE_LINES, X2Y_XPY, BRAID, GENERIC4, NONRED_D9, CONCURRENT_5_PLUS_2]
        corpus += [random_rank2(rng) for _ in range(10)]
        corpus += [random_reduced_rank3(rng) for _ in range(10)]
        for arr in corpus:
            rep = pole_report(arr)
            cand = {c.value for c in rep.candidates}
            assert {a.value for a in rep.actual} <= cand

    def test_zeta_outputs_proper(self):
        # Z(s) -> 0 as s -> infinity: numerator degree < denominator degree
        rng = random.Random(304)
        corpus = [XYZ, THREE_LINES, X2Y_XPY, BRAID, NONRED_D9]
        corpus += [random_rank2(rng) for _ in range(8)]
        corpus += [random_reduced_rank3(rng) for _ in range(5)]
        for arr in corpus:
            assert pole_report(arr).zeta.is_proper

    def test_report_serialization_exact(self):
        obj = pole_report(NONRED_D9).to_dict()
        assert obj["flags"]["center_coefficient"] == "0"
        assert all(isinstance(c["pole"], str) for c in obj["candidate_poles"])
