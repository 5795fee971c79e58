"""Class groups from reduced forms, characters and the mu_p classes (a', J)."""

import random
from fractions import Fraction

import pytest
from sympy import jacobi_symbol

from masseytower.errors import FormWrongDiscriminant, HypothesisViolated, NoPTorsion, SearchExhausted
from masseytower.numberfield.ideals import ideal_from_rows, ideal_multiply, ideal_norm, ideal_power, principal_ideal, unit_ideal
from masseytower.quadratic import classgroup
from masseytower.quadratic.bridge import field_order, form_to_ideal, ideal_to_form
from masseytower.quadratic.characters import (
    CharacterModP,
    bockstein_vanishes,
    character_basis,
    evaluate,
    make_character,
)
from masseytower.quadratic.classgroup import (
    class_group,
    class_group_by_enumeration,
    class_group_by_relations,
    class_log,
    element_order,
    p_rank,
    prime_forms,
)
from masseytower.quadratic.forms import (
    QuadForm,
    class_number,
    fundamental_discriminants,
    is_fundamental_discriminant,
    principal_form,
    reduced_forms,
)
from masseytower.quadratic.mup import check_relation, mu_p_basis


def test_fundamental_discriminants():
    assert is_fundamental_discriminant(-3)
    assert is_fundamental_discriminant(-4)
    assert is_fundamental_discriminant(-20)
    assert not is_fundamental_discriminant(-12)
    assert not is_fundamental_discriminant(-27)
    assert list(fundamental_discriminants(-24, -3)) == [-3, -4, -7, -8, -11, -15, -19, -20, -23, -24]


def test_small_class_numbers():
    assert [class_number(D) for D in (-3, -4, -23, -47, -71, -84)] == [1, 1, 3, 5, 7, 4]
    assert all(f.is_reduced() for f in reduced_forms(-84))


def test_class_group_structure():
    assert class_group(-3).invariant_factors == ()
    assert class_group(-23).invariant_factors == (3,)
    assert class_group(-84).invariant_factors == (2, 2)
    assert class_group(-4027).invariant_factors == (3, 3)
    assert class_group(-3299).invariant_factors == (3, 9)


def _kronecker(D, n):
    """(D/n) for n > 0, from Jacobi symbols and the value at 2."""
    result = 1
    while n % 2 == 0:
        if D % 2 == 0:
            return 0
        result *= 1 if D % 8 in (1, 7) else -1
        n //= 2
    return result * jacobi_symbol(D, n) if n > 1 else result


def _analytic_class_number(D):
    """h = w / (2 (2 - chi(2))) * sum of chi(a) over 0 < a < |D|/2."""
    w = {-3: 6, -4: 4}.get(D, 2)
    total = sum(_kronecker(D, a) for a in range(1, -D // 2 + 1))
    h = Fraction(w * total, 2 * (2 - _kronecker(D, 2)))
    assert h.denominator == 1
    return int(h)


def test_order_matches_the_analytic_class_number():
    for D in fundamental_discriminants(-3000, -3):
        G = class_group(D)
        assert G.order == _analytic_class_number(D)
        for g, d in zip(G.generators, G.invariant_factors):
            assert element_order(G, g) == d


@pytest.mark.slow
def test_order_matches_the_analytic_class_number_to_one_hundred_thousand():
    for D in list(fundamental_discriminants(-100000, -3000))[::150]:
        assert class_group(D).order == _analytic_class_number(D)


def test_relation_path_agrees_with_enumeration():
    for D in list(fundamental_discriminants(-1200, -3)) + [-3299, -4027, -90868]:
        by_relations = class_group_by_relations(D)
        assert by_relations.invariant_factors == class_group_by_enumeration(D).invariant_factors
        assert len(by_relations.dlog_table) == by_relations.order


def test_relation_path_class_log_is_a_homomorphism():
    G = class_group_by_relations(-3299, seed=7)
    rng = random.Random(8)
    forms = reduced_forms(G.D)
    for _ in range(30):
        f, g = rng.choice(forms), rng.choice(forms)
        lhs = class_log(G, f * g)
        rhs = tuple((a + b) % d for a, b, d in zip(class_log(G, f), class_log(G, g), G.invariant_factors))
        assert lhs == rhs


@pytest.mark.slow
def test_both_paths_agree_between_ten_to_five_and_ten_to_six():
    for start in (-100000, -400000, -999999):
        for D in list(fundamental_discriminants(start - 2000, start))[:15]:
            assert class_group_by_relations(D).invariant_factors == class_group_by_enumeration(D).invariant_factors


def test_class_group_switches_to_relations_above_the_enumeration_limit(monkeypatch):
    monkeypatch.setattr(classgroup, "ENUMERATION_LIMIT", 1000)
    G = class_group(-3299)
    assert G.invariant_factors == (3, 9)
    assert G.dlog_table == class_group_by_relations(-3299).dlog_table
    assert class_group(-23).invariant_factors == (3,)


def test_relation_path_budget():
    with pytest.raises(SearchExhausted):
        class_group_by_relations(-3299, max_draws=1)


def test_composition_laws():
    D = -3299
    forms = reduced_forms(D)
    rng = random.Random(1)
    e = principal_form(D)
    for _ in range(200):
        f, g, h = (rng.choice(forms) for _ in range(3))
        assert (f * g) * h == f * (g * h)
        assert f * g == g * f
        assert f * e == f.reduced()
        assert f * f.inverse() == e


def test_class_log():
    G = class_group(-23)
    assert class_log(G, principal_form(-23)) == (0,)
    g = G.generators[0]
    assert class_log(G, g) == (1,)
    assert class_log(G, g * g) == (2,)
    with pytest.raises(FormWrongDiscriminant):
        class_log(G, principal_form(-31))


def test_class_log_is_a_homomorphism():
    G = class_group(-3299)
    forms = reduced_forms(G.D)
    rng = random.Random(2)
    for _ in range(50):
        f, g = rng.choice(forms), rng.choice(forms)
        lhs = class_log(G, f * g)
        rhs = tuple((a + b) % d for a, b, d in zip(class_log(G, f), class_log(G, g), G.invariant_factors))
        assert lhs == rhs


def test_p_rank():
    assert p_rank(class_group(-3), 3) == 0
    assert p_rank(class_group(-3299), 3) == 2
    assert p_rank(class_group(-4027), 3) == 2
    assert p_rank(class_group(-23), 5) == 0


def test_p_rank_two_for_five():
    assert p_rank(class_group(-90868), 5) == 2


def test_characters_are_additive():
    G = class_group(-3299)
    x, y = character_basis(G, 3)
    forms = reduced_forms(G.D)
    rng = random.Random(3)
    for _ in range(50):
        f, g = rng.choice(forms), rng.choice(forms)
        for chi in (x, y, x + y.scaled(2)):
            assert evaluate(G, chi, f * g) == (evaluate(G, chi, f) + evaluate(G, chi, g)) % 3


def test_make_character_rejects_bad_values():
    G = class_group(-84)
    with pytest.raises(ValueError):
        make_character(G, 3, [1, 0])
    assert make_character(G, 3, [0, 0]).is_zero()


def test_bockstein_vanishes_needs_nine():
    G = class_group(-3299)  # (3, 9)
    x, y = character_basis(G, 3)
    assert not bockstein_vanishes(G, x)
    assert bockstein_vanishes(G, y)
    assert all(not bockstein_vanishes(class_group(-4027), c) for c in character_basis(class_group(-4027), 3))
    assert bockstein_vanishes(G, CharacterModP(3, (0, 0)))


def test_prime_forms_have_the_discriminant():
    for q, f in prime_forms(-3299, 60):
        assert f.discriminant == -3299
        assert f.a == q


def test_ideal_form_bridge():
    D = -3299
    order = field_order(D)
    assert ideal_to_form(D, unit_ideal(order)) == principal_form(D)
    for q, f in prime_forms(D, 40):
        assert ideal_to_form(D, form_to_ideal(order, D, f)) == f.reduced()
    forms = reduced_forms(D)
    rng = random.Random(4)
    for _ in range(20):
        f, g = rng.choice(forms), rng.choice(forms)
        I = ideal_multiply(order, form_to_ideal(order, D, f), form_to_ideal(order, D, g))
        assert ideal_to_form(D, I) == f * g


def test_mu_p_basis():
    G = class_group(-23)
    order = field_order(-23)
    (m,) = mu_p_basis(G, 3)
    assert check_relation(order, m, 3)
    assert principal_ideal(order, m.a_prime) == ideal_power(order, m.J, -3)


def test_mu_p_basis_rank_two_is_independent():
    G = class_group(-4027)
    basis = mu_p_basis(G, 3)
    logs = [class_log(G, ideal_to_form(G.D, m.J)) for m in basis]
    assert len(basis) == 2
    assert (logs[0][0] * logs[1][1] - logs[0][1] * logs[1][0]) % 3 != 0


def test_ideal_cubes_for_rank_two_field():
    """Cubing O_K-ideals of D = -3299 keeps full rank and matches form composition."""
    D = -3299
    order = field_order(D)
    J = ideal_from_rows(order, [[1, 26], [0, 27]])
    assert ideal_norm(ideal_power(order, J, 3)) == 27 ** 3
    for f in reduced_forms(D):
        I = form_to_ideal(order, D, f)
        cube = ideal_power(order, I, 3)
        assert ideal_norm(cube) == f.a ** 3
        assert ideal_to_form(D, cube) == f * f * f


def test_mu_p_basis_for_three_by_nine():
    G = class_group(-3299)
    order = field_order(G.D)
    basis = mu_p_basis(G, 3)
    assert len(basis) == 2
    for m in basis:
        assert check_relation(order, m, 3)
        assert principal_ideal(order, m.a_prime) == ideal_power(order, m.J, -3)


def test_mu_p_basis_errors():
    with pytest.raises(NoPTorsion):
        mu_p_basis(class_group(-23), 5)
    with pytest.raises(HypothesisViolated):
        mu_p_basis(class_group(-4), 3)
