"""Cochain-level identities on small p-groups."""

import random

import pytest

from masseytower.errors import CupNonzero
from masseytower.oracle.cochains import coboundary, cup, half_square, scalar_cochain
from masseytower.oracle.groups import (
    check_associativity,
    cyclic_group,
    elementary_abelian,
    has_inverses,
    heisenberg_group,
    named_group,
)
from masseytower.oracle.massey import (
    bockstein,
    bockstein_sign,
    cup_class_is_zero,
    half_cup_check,
    massey_dwyer,
    massey_via_twist,
    trivial_model,
)
from masseytower.oracle.suite import run_oracle_suite


def test_group_tables():
    for G in (cyclic_group(3), cyclic_group(3, 2), elementary_abelian(3), heisenberg_group(3)):
        assert check_associativity(G, rng=random.Random(0))
        assert has_inverses(G)
    H = heisenberg_group(3)
    assert H.order == 27
    assert any(H.mul(g, h) != H.mul(h, g) for g in range(27) for h in range(27))


def test_unknown_group_name():
    with pytest.raises(ValueError):
        named_group("Z7")


def test_half_square_trivializes_the_cup_square():
    G = elementary_abelian(3)
    x = scalar_cochain(G, G.characters["x"])
    assert (coboundary(G, half_square(G, x)) + cup(G, x, x)).is_zero()


def test_cup_of_independent_characters_is_nonzero():
    G = elementary_abelian(3)
    x, y = G.characters["x"], G.characters["y"]
    assert not cup_class_is_zero(G, x, y)
    with pytest.raises(CupNonzero):
        massey_dwyer(G, x, x, y)


def test_heisenberg_cup_vanishes():
    G = heisenberg_group(3)
    x, y = G.characters["x"], G.characters["y"]
    model = trivial_model(G)
    assert cup_class_is_zero(G, x, y, model)
    half_cup_check(G, x, y, model=model)


def test_dwyer_and_twist_agree_for_repeated_argument():
    G = heisenberg_group(3)
    x, y = G.characters["x"], G.characters["y"]
    model = trivial_model(G)
    assert massey_dwyer(G, x, x, y, model=model) == massey_via_twist(G, x, x, y, model=model)


def test_bockstein_on_cyclic_groups():
    Z3 = cyclic_group(3)
    model = trivial_model(Z3)
    assert not model.is_coboundary(bockstein(Z3, Z3.characters["x"]))
    assert bockstein_sign(Z3, Z3.characters["x"]) in (1, -1)
    Z9 = cyclic_group(3, 2)
    assert trivial_model(Z9).is_coboundary(bockstein(Z9, Z9.characters["x"]))


def test_zero_in_triple_for_five():
    Z5 = cyclic_group(5)
    assert massey_dwyer(Z5, Z5.characters["x"], Z5.characters["x"], Z5.characters["x"]).contains_zero()


@pytest.mark.parametrize("name", ["Z3", "Z5", "Z9", "Z3xZ3"])
def test_oracle_suite(name):
    report = run_oracle_suite(name, trials=20, seed=1)
    assert report.passed, [k for k, ok in report.checks.items() if not ok]


@pytest.mark.slow
@pytest.mark.parametrize("name", ["heis27", "Z5xZ5"])
def test_oracle_suite_larger_groups(name):
    report = run_oracle_suite(name, trials=100, seed=0)
    assert report.passed, [k for k, ok in report.checks.items() if not ok]
    assert report.to_dict()["group"] == report.group
