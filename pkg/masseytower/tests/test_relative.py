"""Relative maps of L_x / K and the split torsor algebra over the Hilbert 3-class field of Q(sqrt -23)."""

import random

import pytest
from sympy import primerange

from masseytower.errors import WitnessEquationFailed
from masseytower.extension.provider import NativeCubicProvider
from masseytower.extension.unramified import build_extension, character_value
from masseytower.massey.cocycle import is_dual_cocycle, lift_dual_cocycle
from masseytower.numberfield.ideals import divisor_add, divisor_of_element, factor_ideal, ideal_power, prime_decomposition
from masseytower.quadratic.bridge import form_to_ideal
from masseytower.quadratic.characters import character_basis
from masseytower.quadratic.classgroup import class_group
from masseytower.quadratic.forms import reduced_forms
from masseytower.quadratic.mup import mu_p_basis
from masseytower.relative.maps import RelativeMaps
from masseytower.relative.torsor import TorsorAlgebra, kernel_intersection_check, torsor_witness_check


@pytest.fixture(scope="module")
def maps():
    G = class_group(-23)
    (x,) = character_basis(G, 3)
    return RelativeMaps(build_extension(G, 3, x, NativeCubicProvider()), G)


def _nonzero(order, rng):
    v = order.random_element(rng, 3)
    while not any(v):
        v = order.random_element(rng, 3)
    return v


def test_norm_of_base_element_is_its_power(maps):
    rng = random.Random(1)
    for _ in range(10):
        t = _nonzero(maps.K, rng)
        assert maps.norm(maps.embed(t)) == maps.K.power(t, 3)


def test_sigma_fixes_the_base(maps):
    rng = random.Random(2)
    for _ in range(10):
        y = maps.embed(_nonzero(maps.K, rng))
        assert maps.sigma(y) == y
        assert maps.restrict(y) is not None


def test_sigma_has_order_p(maps):
    rng = random.Random(3)
    u = _nonzero(maps.L, rng)
    assert maps.sigma(maps.sigma(maps.sigma(u))) == maps.sigma(u, 3) == tuple(u)


def test_gamma_identity(maps):
    rng = random.Random(4)
    for _ in range(5):
        assert maps.check_gamma_identity(_nonzero(maps.L, rng))


def test_hilbert90(maps):
    rng = random.Random(5)
    L = maps.L
    for _ in range(3):
        a = _nonzero(L, rng)
        c = L.divide(maps.sigma(a), a)
        b = maps.hilbert90(c, rng)
        assert L.divide(maps.sigma(b), b) == c


def test_hilbert90_needs_norm_one(maps):
    two = maps.embed(maps.K.from_rational(2))
    with pytest.raises(ValueError):
        maps.hilbert90(two)


def test_solve_norm_element(maps):
    assert maps.solve_norm_element(maps.K.one()) == maps.L.one()
    rng = random.Random(6)
    u = _nonzero(maps.L, rng)
    target = maps.norm(u)
    assert maps.norm(maps.solve_norm_element(target)) == target


def test_divisor_maps(maps):
    for Q in prime_decomposition(maps.K, 2):
        above = maps.primes_above(Q)
        assert sum(P.f for P in above) == 3 * Q.f
        assert maps.norm_divisor(maps.extend_divisor({Q: 1})) == {Q: 3}
        for P in above:
            assert maps.below(maps.sigma_prime(P)) == Q


def test_decompose_ideal_recomposes(maps):
    L = maps.L
    P = prime_decomposition(L, 2)[0]
    I = {P: 1}
    u, J_prime, I_prime = maps.decompose_ideal(I)
    recomposed = divisor_add(divisor_of_element(L, u), maps.extend_divisor(J_prime), maps.one_minus_sigma(I_prime))
    assert recomposed == I


@pytest.fixture(scope="module")
def cocycle(maps):
    (m,) = mu_p_basis(maps.base_group, 3)
    return lift_dual_cocycle(maps, m, random.Random(0))


def test_lift_is_a_dual_cocycle(maps, cocycle):
    assert is_dual_cocycle(maps, cocycle)


def test_torsor_witnesses(maps, cocycle):
    T = TorsorAlgebra(maps)
    report = torsor_witness_check(T, cocycle.b, cocycle.a, cocycle.J_divisor, cocycle.I_divisor)
    assert report.passed
    assert all(report.equations.values())


def test_torsor_witness_failure_is_named(maps, cocycle):
    T = TorsorAlgebra(maps)
    L = maps.L
    two = maps.embed(maps.K.from_rational(2))
    bad = (L.mul(L.inverse(cocycle.b), two),) + tuple(L.one() for _ in range(2))
    with pytest.raises(WitnessEquationFailed) as info:
        torsor_witness_check(T, cocycle.b, cocycle.a, cocycle.J_divisor, cocycle.I_divisor, b1=bad)
    assert info.value.equation == "(1)"
    report = torsor_witness_check(T, cocycle.b, cocycle.a, cocycle.J_divisor, cocycle.I_divisor, b1=bad, raise_on_failure=False)
    assert not report.passed


def test_torsor_actions_commute(maps):
    T = TorsorAlgebra(maps)
    c = T.random_element(random.Random(7))
    assert T.sigma_x(T.sigma_y(c)) == T.sigma_y(T.sigma_x(c))
    a = _nonzero(maps.L, random.Random(8))
    assert T.sigma_y(T.i_y(a)) == T.i_y(a)
    assert T.sigma_x(T.i_x(a)) == T.i_x(a)


def test_kernel_intersection(maps):
    T = TorsorAlgebra(maps)
    g = T.random_element(random.Random(9))
    f = T.one_minus_x(T.one_minus_y(g))
    assert T.norm_x(f) == T.one()
    assert T.norm_y(f) == T.one()
    gamma = kernel_intersection_check(T, f, random.Random(10))
    assert T.one_minus_x(T.one_minus_y(gamma)) == f
    with pytest.raises(ValueError):
        kernel_intersection_check(T, T.i_y(maps.embed(maps.K.from_rational(2))))


def test_ideal_maps_agree_with_divisor_maps(maps):
    """N(J O_L) = J^p, sigma fixes extended ideals and acts on primes of L like sigma_prime."""
    K, L = maps.K, maps.L
    for f in reduced_forms(-23):
        J = form_to_ideal(K, -23, f)
        extended = maps.extend_ideal(J)
        assert maps.norm_ideal(extended) == ideal_power(K, J, 3)
        assert maps.sigma_ideal(extended) == extended
        assert factor_ideal(L, extended) == maps.extend_divisor(factor_ideal(K, J))
    for P in prime_decomposition(L, 2) + prime_decomposition(L, 3):
        assert maps.sigma_ideal(P.ideal) == maps.sigma_prime(P).ideal


def test_split_primes_are_the_kernel_of_x(maps):
    """Q splits completely in L_x exactly when x(Q) = 0."""
    G = maps.base_group
    (x,) = character_basis(G, 3)
    for q in primerange(2, 60):
        if G.D % q == 0:
            continue
        for Q in prime_decomposition(maps.K, q):
            assert maps.is_split(Q) == (character_value(G, x, Q) == 0)


def test_decompose_ideal_with_nontrivial_class_group(engine_3299):
    G = engine_3299.G
    x, _ = character_basis(G, 3)
    R = engine_3299.maps(x)
    L = R.L
    assert R.class_group().invariant_factors
    g = factor_ideal(R.K, form_to_ideal(R.K, G.D, G.generators[0]))
    P = prime_decomposition(L, 2)[0]
    theta = L.add(L.one(), L.element([int(i == 1) for i in range(L.degree)]))
    I = divisor_add(R.extend_divisor(g), R.one_minus_sigma({P: 1}), divisor_of_element(L, theta))
    u, J_prime, I_prime = R.decompose_ideal(I)
    recomposed = divisor_add(divisor_of_element(L, u), R.extend_divisor(J_prime), R.one_minus_sigma(I_prime))
    assert recomposed == I


def test_rank_two_ideal_norms(engine_3299):
    G = engine_3299.G
    x, _ = character_basis(G, 3)
    R = engine_3299.maps(x)
    for f in G.generators:
        J = form_to_ideal(R.K, G.D, f)
        assert R.norm_ideal(R.extend_ideal(J)) == ideal_power(R.K, J, 3)
