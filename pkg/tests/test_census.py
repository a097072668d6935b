"""Distribution census, staircase constructions, and the report verifiers."""

from collections import Counter
from fractions import Fraction

import pytest

from parkmodel import (
    NaplesSemantics,
    StaircaseShape,
    compare_naples_semantics,
    expected_random_naples,
    full_census,
    is_staircase,
    iter_staircase_shapes,
    naples_count,
    parking_choice_count,
    parking_count,
    shape_of,
    staircase_choice_count,
    tuple_for_numerator,
    tuple_for_odd_numerator,
    verify_direction_total,
    verify_monotonicity,
    verify_odd_census,
    verify_sandwich,
)

from oracles import all_tuples, naive_choice_count

JUMP = NaplesSemantics.JUMP_BACK_THEN_FORWARD
FIRSTFIT = NaplesSemantics.FIRST_FIT_BACKWARD
HALF = Fraction(1, 2)


class TestFullCensus:
    def test_single_car(self):
        table = full_census(1)
        assert table.counts == (0, 1)
        assert table.denominator == 1
        assert table.expectation() == 1

    def test_two_cars_by_hand(self):
        table = full_census(2)
        assert table.counts == (0, 1, 3)
        assert table.expectation() == Fraction(7, 2)

    def test_three_cars_by_hand(self):
        table = full_census(3)
        assert table.counts == (3, 1, 6, 1, 16)
        assert table.total() == 27

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_matches_hypercube_census(self, n):
        hist = Counter(naive_choice_count(t) for t in all_tuples(n))
        table = full_census(n)
        for a, c in table.items():
            assert c == hist.get(a, 0)

    @pytest.mark.parametrize("n", [5, 6])
    def test_marginal_invariants(self, n):
        table = full_census(n)
        assert table.total() == n**n
        assert table.count_for(table.denominator) == parking_count(n)
        assert table.count_for(0) == n**n - naples_count(n, 1)
        assert table.expectation() == expected_random_naples(n, 1, HALF)

    def test_thread_count_does_not_change_the_result(self):
        assert full_census(5, threads=3) == full_census(5, threads=1)

    def test_wider_backup_with_either_semantics(self):
        ff = full_census(4, k=2, semantics=FIRSTFIT)
        jp = full_census(4, k=2, semantics=JUMP)
        assert ff.total() == jp.total() == 4**4
        assert ff.expectation() == expected_random_naples(4, 2, HALF)
        assert ff.expectation() == Fraction(727, 4)
        assert jp.expectation() == Fraction(1487, 8)

    def test_gating(self):
        with pytest.raises(ValueError):
            full_census(8)
        with pytest.raises(ValueError):
            full_census(9, allow_large=True)
        with pytest.raises(ValueError):
            full_census(0)
        with pytest.raises(ValueError):
            full_census(3, k=0)
        with pytest.raises(ValueError):
            full_census(3, threads=0)

    @pytest.mark.slow
    def test_eight_car_census_when_unlocked(self):
        table = full_census(8, allow_large=True)
        assert table.total() == 8**8
        assert table.count_for(128) == parking_count(8)
        assert table.expectation() == expected_random_naples(8, 1, HALF)


class TestStaircaseShapes:
    def test_is_staircase_examples(self):
        assert is_staircase((2, 2))
        assert is_staircase((2, 2, 2))
        assert is_staircase((3, 3, 2))
        assert is_staircase((4, 4, 3, 3, 2, 2))
        assert not is_staircase((2,))
        assert not is_staircase((1, 1))
        assert not is_staircase((3, 2, 2))
        assert not is_staircase((2, 2, 3))
        assert not is_staircase((4, 4, 2, 2))

    def test_expand_and_shape_of_roundtrip(self):
        for n in range(2, 8):
            for shape in iter_staircase_shapes(n):
                alpha = shape.expand()
                assert is_staircase(alpha)
                assert len(alpha) == shape.n == n
                assert alpha[0] == shape.top
                assert shape_of(alpha) == shape

    def test_expand_examples(self):
        assert StaircaseShape((2,)).expand() == (2, 2)
        assert StaircaseShape((1, 2)).expand() == (3, 3, 2)
        assert StaircaseShape((3, 1, 2)).expand() == (4, 4, 3, 2, 2, 2)

    @pytest.mark.parametrize("n", range(2, 11))
    def test_shape_count(self, n):
        shapes = list(iter_staircase_shapes(n))
        assert len(shapes) == 1 << (n - 2)
        assert len(set(shapes)) == len(shapes)

    def test_shape_validation(self):
        with pytest.raises(ValueError):
            StaircaseShape(())
        with pytest.raises(ValueError):
            StaircaseShape((2, 1))
        with pytest.raises(ValueError):
            StaircaseShape((0, 2))
        with pytest.raises(ValueError):
            StaircaseShape((True, 2))
        with pytest.raises(ValueError):
            shape_of((1, 2, 3))
        with pytest.raises(ValueError):
            iter_staircase_shapes(1)

    @pytest.mark.parametrize("n", range(2, 8))
    def test_closed_form_matches_both_counting_routes(self, n):
        for shape in iter_staircase_shapes(n):
            alpha = shape.expand()
            g = staircase_choice_count(shape)
            assert g & 1
            assert g == parking_choice_count(alpha)
            assert g == naive_choice_count(alpha)


class TestOddInverse:
    def test_six_car_spot_values(self):
        assert tuple_for_odd_numerator(6, 1) == (6, 6, 5, 4, 3, 2)
        assert tuple_for_odd_numerator(6, 4) == (4, 4, 4, 4, 3, 2)
        assert tuple_for_odd_numerator(6, 16) == (2, 2, 2, 2, 2, 2)

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7])
    def test_inverts_the_closed_form(self, n):
        for t in range(1, (1 << (n - 2)) + 1):
            alpha = tuple_for_odd_numerator(n, t)
            assert parking_choice_count(alpha) == 2 * t - 1
            assert is_staircase(alpha)

    def test_larger_n_still_resolves(self):
        alpha = tuple_for_odd_numerator(12, 1)
        assert alpha == (12, 12, 11, 10, 9, 8, 7, 6, 5, 4, 3, 2)
        assert parking_choice_count(alpha) == 1

    def test_validation(self):
        with pytest.raises(ValueError):
            tuple_for_odd_numerator(1, 1)
        with pytest.raises(ValueError):
            tuple_for_odd_numerator(6, 0)
        with pytest.raises(ValueError):
            tuple_for_odd_numerator(6, 17)
        with pytest.raises(ValueError):
            tuple_for_odd_numerator(25, 1)


class TestDyadicInverse:
    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_every_numerator_is_hit(self, n):
        for a in range(0, (1 << (n - 1)) + 1):
            alpha = tuple_for_numerator(n, a)
            assert len(alpha) == n
            assert parking_choice_count(alpha) == a

    def test_edge_witnesses(self):
        assert tuple_for_numerator(1, 1) == (1,)
        assert tuple_for_numerator(2, 2) == (1, 1)
        assert tuple_for_numerator(2, 1) == (2, 2)
        assert tuple_for_numerator(3, 0) == (3, 3, 3)

    def test_two_cars_have_no_zero_witness(self):
        with pytest.raises(ValueError):
            tuple_for_numerator(2, 0)
        with pytest.raises(ValueError):
            tuple_for_numerator(1, 0)

    def test_validation(self):
        with pytest.raises(ValueError):
            tuple_for_numerator(0, 0)
        with pytest.raises(ValueError):
            tuple_for_numerator(3, -1)
        with pytest.raises(ValueError):
            tuple_for_numerator(3, 5)


class TestVerifiers:
    def test_odd_census_small(self):
        report = verify_odd_census(5)
        assert report.passed
        assert set(report.findings) == set(range(1, 16, 2))
        for g, alpha in report.findings.items():
            assert alpha == tuple_for_odd_numerator(5, (g + 1) // 2)

    @pytest.mark.slow
    def test_odd_census_seven_cars(self):
        report = verify_odd_census(7)
        assert report.passed
        assert len(report.findings) == 32

    def test_sandwich(self):
        report = verify_sandwich(10)
        assert report.passed
        assert len(report.checks) == 10
        assert report.findings[4]["expected"] == "653/4"

    def test_monotonicity_exhaustive_and_sampled(self):
        assert verify_monotonicity(4).passed
        assert verify_monotonicity(7, samples=2000, seed=1).passed

    def test_direction_total(self):
        report = verify_direction_total(4)
        assert report.passed
        assert "125" in report.checks[0].detail

    def test_semantics_comparison_k1(self):
        report = compare_naples_semantics(4, 1)
        assert report.passed
        assert report.findings["jump"] == report.findings["firstfit"]
        assert report.findings["jump"] == report.findings["recursion"]

    def test_semantics_comparison_k2(self):
        report = compare_naples_semantics(4, 2)
        assert report.passed
        assert report.findings["firstfit"] == report.findings["recursion"]
        assert report.findings["firstfit"] == "727/4"
        assert report.findings["jump"] == "1487/8"

    def test_verifier_domain_errors(self):
        with pytest.raises(ValueError):
            verify_odd_census(1)
        with pytest.raises(ValueError):
            verify_odd_census(8)
        with pytest.raises(ValueError):
            verify_sandwich(0)
        with pytest.raises(ValueError):
            verify_monotonicity(1)
        with pytest.raises(ValueError):
            verify_direction_total(8)
        with pytest.raises(ValueError):
            compare_naples_semantics(7, 1)
        with pytest.raises(ValueError):
            compare_naples_semantics(3, 0)
