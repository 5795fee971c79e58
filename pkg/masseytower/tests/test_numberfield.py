"""Maximal orders, ideal arithmetic, prime decomposition and class groups of number fields."""

import random

import pytest

from masseytower.errors import NotPrincipal, ReduciblePolynomial
from masseytower.numberfield.classgroup import BoundPolicy, class_group_nf, is_principal
from masseytower.numberfield.ideals import (
    factor_ideal,
    ideal_from_divisor,
    ideal_inverse,
    ideal_multiply,
    ideal_norm,
    prime_decomposition,
    principal_ideal,
    unit_ideal,
)
from masseytower.numberfield.order import maximal_order
from masseytower.quadratic.forms import class_number


def test_maximal_order_discriminants():
    assert maximal_order([1, 0, 1]).discriminant == -4
    assert maximal_order([-1, -1, 0, 1]).discriminant == -23
    assert maximal_order([-5, 0, 1]).discriminant == 5
    # index 2 in Z[sqrt(-3)]
    assert maximal_order([3, 0, 1]).discriminant == -3


def test_maximal_order_rejects_reducible():
    with pytest.raises(ReduciblePolynomial):
        maximal_order([-1, 0, 1])


def test_prime_decomposition_shapes():
    gauss = maximal_order([1, 0, 1])
    five = prime_decomposition(gauss, 5)
    assert [(P.e, P.f) for P in five] == [(1, 1), (1, 1)]
    two = prime_decomposition(gauss, 2)
    assert [(P.e, P.f) for P in two] == [(2, 1)]
    cubic = maximal_order([-1, -1, 0, 1])
    assert sorted(P.e for P in prime_decomposition(cubic, 23)) == [1, 2]


def test_prime_powers_multiply_back_to_q():
    order = maximal_order([-1, -1, 0, 1])
    for q in (2, 3, 5, 7, 23, 59):
        primes = prime_decomposition(order, q)
        assert sum(P.e * P.f for P in primes) == 3
        assert ideal_from_divisor(order, {P: P.e for P in primes}) == principal_ideal(order, order.from_rational(q))


def test_inverse_and_norm():
    order = maximal_order([-1, -1, 0, 1])
    rng = random.Random(5)
    for _ in range(30):
        x, y = order.random_element(rng, 3), order.random_element(rng, 3)
        if not any(x) or not any(y):
            continue
        I, J = principal_ideal(order, x), principal_ideal(order, y)
        assert ideal_multiply(order, I, ideal_inverse(order, I)) == unit_ideal(order)
        assert ideal_norm(ideal_multiply(order, I, J)) == ideal_norm(I) * ideal_norm(J)
        assert ideal_from_divisor(order, factor_ideal(order, I)) == I


def test_class_group_nf_quadratic():
    order = maximal_order([23, 0, 1])
    cg = class_group_nf(order, BoundPolicy.MINKOWSKI)
    assert cg.order_of_group == 3
    assert class_group_nf(maximal_order([1, 0, 1])).order_of_group == 1


@pytest.mark.slow
def test_class_group_nf_agrees_with_forms():
    for n in (23, 31, 47, 71, 79, 21, 5, 14):
        order = maximal_order([n, 0, 1])
        assert class_group_nf(order, BoundPolicy.MINKOWSKI).order_of_group == class_number(order.discriminant)


def test_is_principal():
    order = maximal_order([1, 0, 1])
    assert principal_ideal(order, is_principal(order, unit_ideal(order))) == unit_ideal(order)
    seven = principal_ideal(order, order.from_rational(7))
    assert principal_ideal(order, is_principal(order, seven)) == seven


def test_nonprincipal_prime_reports_its_class():
    order = maximal_order([23, 0, 1])
    cg = class_group_nf(order, BoundPolicy.MINKOWSKI)
    P = prime_decomposition(order, 2)[0]
    with pytest.raises(NotPrincipal) as info:
        is_principal(order, P.ideal, cg)
    assert any(info.value.exponents)
