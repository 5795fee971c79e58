"""Golod-Shafarevich filtering and tower verdicts."""

from fractions import Fraction

import pytest

from masseytower.errors import MatrixMissing
from masseytower.linalg.polynomials import count_roots_open_unit_interval
from masseytower.massey.engine import ZassenhausMatrix
from masseytower.quadratic.classgroup import class_group
from masseytower.tower.classify import (
    CONJECTURE_33,
    Classification,
    Reason,
    Verdict,
    classify,
    classify_invariants,
    nine_divides_both,
)
from masseytower.tower.golod import (
    FINITE_TYPES,
    PresentationProfile,
    admissible_types,
    gs_positive,
    roots_in_unit_interval,
    zassenhaus_polynomial,
)

ZERO = ((0, 0), (0, 0))


def test_zassenhaus_polynomial():
    f = zassenhaus_polynomial(3, 5)
    assert f(0) == 1
    assert f(1) == 1
    assert f(Fraction(1, 2)) == Fraction(1, 8) + Fraction(1, 32)
    with pytest.raises(ValueError):
        zassenhaus_polynomial(2, 5)


def test_presentation_profile():
    assert PresentationProfile(2, (3, 3)).gs_polynomial() == zassenhaus_polynomial(3, 3)
    with pytest.raises(ValueError):
        PresentationProfile(2, (1,))


def test_gs_positive():
    assert gs_positive(2, (3, 3))
    assert gs_positive(2, (3, 7))
    assert not gs_positive(2, (3, 9))
    assert not gs_positive(2, (5, 5))
    assert not gs_positive(3, (3, 3, 3))


def test_admissible_types():
    assert admissible_types(3) == {(3, 3)}
    assert admissible_types(9) == {(3, 3), (3, 5), (3, 7)}
    assert admissible_types(15) == set(FINITE_TYPES)


def test_admissible_types_stabilize():
    previous = admissible_types(9)
    for j_max in range(10, 16):
        current = admissible_types(j_max)
        assert current == previous
        previous = current


def test_even_depths_pass_positivity_alone():
    types = admissible_types(9, odd_depths=False)
    assert {(3, 4), (3, 6), (4, 4)} <= types
    assert (3, 8) not in types
    assert set(FINITE_TYPES) <= types


def test_excluded_types_have_roots():
    counts = dict(roots_in_unit_interval([(3, 3), (3, 9), (5, 5)]))
    assert counts[(3, 3)] == 0
    assert counts[(3, 9)] > 0 and counts[(5, 5)] > 0
    assert count_roots_open_unit_interval(zassenhaus_polynomial(3, 8)) > 0


def test_small_ranks():
    assert classify_invariants(3, (4,)).verdict is Verdict.LENGTH_ZERO
    one = classify_invariants(3, (2, 9))
    assert one.verdict is Verdict.LENGTH_ONE
    assert one.reason is Reason.CYCLIC_P_PART
    three = classify_invariants(3, (3, 3, 3))
    assert three.verdict is Verdict.INFINITE
    assert three.reason is Reason.RANK_AT_LEAST_3


def test_rank_two_needs_a_matrix():
    with pytest.raises(MatrixMissing):
        classify_invariants(5, (5, 5))


def test_zassenhaus_rank_rules():
    full = classify_invariants(5, (5, 5), ((1, 0), (0, 2)))
    assert full.verdict is Verdict.GS_INCONCLUSIVE
    assert full.zassenhaus_type_constraint == {(3, 3)}
    assert full.zm_rank == 2

    partial = classify_invariants(5, (5, 5), ((0, 1), (0, 3)))
    assert partial.verdict is Verdict.GS_INCONCLUSIVE
    assert partial.reason is Reason.ZM_RANK_1
    assert partial.zassenhaus_type_constraint == {(3, 5), (3, 7)}
    assert partial.may_be_infinite
    assert CONJECTURE_33 in partial.annotations

    zero = classify_invariants(5, (5, 5), ZERO)
    assert zero.verdict is Verdict.INFINITE
    assert zero.reason is Reason.ZM_ZERO


def test_zero_matrix_for_three_needs_the_bockstein():
    assert nine_divides_both((9, 9))
    assert not nine_divides_both((3, 9))
    unchecked = classify_invariants(3, (3, 9), ZERO)
    assert unchecked.verdict is Verdict.GS_INCONCLUSIVE
    assert unchecked.reason is Reason.ZM_ZERO_P3_UNCHECKED
    assert unchecked.bockstein_vanishes == (False, True)
    infinite = classify_invariants(3, (9, 27), ZERO)
    assert infinite.verdict is Verdict.INFINITE
    assert infinite.nine_divides_both


def test_classify_from_class_group():
    G = class_group(-3299)
    result = classify(3, G, ZassenhausMatrix(3, -3299, ZERO))
    assert result.reason is Reason.ZM_ZERO_P3_UNCHECKED
    assert result.bockstein_vanishes == (False, True)
    assert classify(3, class_group(-23)).verdict is Verdict.LENGTH_ONE
    assert classify(5, class_group(-23)).verdict is Verdict.LENGTH_ZERO


def test_reference_annotation():
    G = class_group(-90868)
    result = classify(5, G, ZassenhausMatrix(5, -90868, ((1, 0), (0, 0))))
    assert result.reason is Reason.ZM_RANK_1
    assert "reference: finite tower" in result.annotations


def test_classification_round_trip():
    result = classify_invariants(5, (5, 5), ((0, 1), (0, 3)))
    assert Classification.from_dict(result.to_dict()) == result
