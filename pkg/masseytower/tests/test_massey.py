"""Dual cocycle lifts, <x, x, y> values, certificates and the Zassenhaus matrix."""

import random
import time

import pytest

from masseytower.budget import check_deadline, time_budget
from masseytower.errors import HypothesisViolated, NoPTorsion, TimeLimitExceeded
from masseytower.extension.provider import NativeCubicProvider
from masseytower.linalg.matrices import fp_rank
from masseytower.massey.cocycle import is_dual_cocycle, lift_dual_cocycle
from masseytower.massey.engine import (
    MasseyCertificate,
    MasseyEngine,
    hypothesis_guard,
    massey_xxy,
    merkle_root,
    replay_certificate,
    zassenhaus_matrix,
)
from masseytower.numberfield.classgroup import BoundPolicy, class_group_nf
from masseytower.numberfield.order import maximal_order
from masseytower.quadratic.bridge import field_order
from masseytower.quadratic.characters import character_basis
from masseytower.quadratic.classgroup import class_group
from masseytower.quadratic.mup import mu_p_basis, multiply, power, trivial_class


def test_hypothesis_guard():
    record = hypothesis_guard(-23, 3)
    assert record.cup_products_vanish and record.indeterminacy_vanishes
    for D, p in ((-23, 2), (-23, 9), (-3, 3), (-4, 5), (23, 3), (-12, 3)):
        with pytest.raises(HypothesisViolated):
            hypothesis_guard(D, p)


@pytest.fixture(scope="module")
def engine_23():
    return MasseyEngine(class_group(-23), 3, NativeCubicProvider(), time_limit=None)


def test_trivial_class_lifts_to_trivial_cocycle(engine_23):
    (x,) = character_basis(engine_23.G, 3)
    R = engine_23.maps(x)
    z = lift_dual_cocycle(R, trivial_class(R.K))
    assert z.b == R.L.one() and z.a == R.L.one()
    assert not z.J and not z.I


def test_nontrivial_lift_is_verified(engine_23):
    (x,) = character_basis(engine_23.G, 3)
    R = engine_23.maps(x)
    (m,) = mu_p_basis(engine_23.G, 3)
    z = lift_dual_cocycle(R, m, random.Random(1))
    assert is_dual_cocycle(R, z)
    assert R.norm(z.a) == tuple(m.a_prime)


def test_value_on_trivial_class_is_zero(engine_23):
    (x,) = character_basis(engine_23.G, 3)
    assert engine_23.evaluate(x, x, trivial_class(field_order(-23))).value == 0


def test_value_is_independent_of_the_seed(engine_23):
    (x,) = character_basis(engine_23.G, 3)
    (m,) = mu_p_basis(engine_23.G, 3)
    values = {engine_23.evaluate(x, x, m, seed=s).value for s in range(3)}
    assert len(values) == 1


def test_value_is_linear_in_the_argument(engine_23):
    (x,) = character_basis(engine_23.G, 3)
    (m,) = mu_p_basis(engine_23.G, 3)
    K = field_order(-23)
    v1 = engine_23.evaluate(x, x, m).value
    v2 = engine_23.evaluate(x, x, power(K, m, 2)).value
    assert v2 == (2 * v1) % 3


def test_certificate_replays(engine_23):
    (x,) = character_basis(engine_23.G, 3)
    (m,) = mu_p_basis(engine_23.G, 3)
    cert = engine_23.evaluate(x, x, m)
    assert replay_certificate(cert, engine_23.G) == cert.value
    again = MasseyCertificate.from_dict(cert.to_dict())
    assert again.digest == cert.digest


def test_tampered_certificate_is_rejected(engine_23):
    (x,) = character_basis(engine_23.G, 3)
    (m,) = mu_p_basis(engine_23.G, 3)
    data = engine_23.evaluate(x, x, m).to_dict()
    data["value"] = (data["value"] + 1) % 3
    with pytest.raises(ValueError):
        MasseyCertificate.from_dict(data)


def test_massey_xxy_wrapper():
    G = class_group(-23)
    (x,) = character_basis(G, 3)
    (m,) = mu_p_basis(G, 3)
    value, cert = massey_xxy(G, x, x, m, NativeCubicProvider(), time_limit=None)
    assert value == cert.value
    assert cert.D == -23 and cert.p == 3


def test_zero_character_is_rejected(engine_23):
    (x,) = character_basis(engine_23.G, 3)
    (m,) = mu_p_basis(engine_23.G, 3)
    with pytest.raises(ValueError):
        engine_23.evaluate(x.scaled(0), x, m)


def test_zassenhaus_matrix_needs_rank_two(engine_23):
    with pytest.raises(HypothesisViolated):
        engine_23.zassenhaus_matrix()
    with pytest.raises(NoPTorsion):
        zassenhaus_matrix(-7, 3, NativeCubicProvider())


def test_merkle_root():
    assert merkle_root(["a"]) == merkle_root(["a"])
    assert merkle_root(["a", "b"]) != merkle_root(["b", "a"])
    assert merkle_root(["a", "b", "c"]) == merkle_root(["a", "b", "c", "c"])


@pytest.mark.slow
def test_smallest_rank_two_field_is_seed_independent():
    first = zassenhaus_matrix(-3299, 3, NativeCubicProvider(), seed=0, time_limit=None)
    second = zassenhaus_matrix(-3299, 3, NativeCubicProvider(), seed=11, time_limit=None)
    assert first.entries == second.entries
    assert len(first.certificates) == 4
    G = class_group(-3299)
    for cert in first.certificates:
        assert replay_certificate(cert, G) == cert.value


def _matrix(engine, seed):
    x, y = character_basis(engine.G, engine.p)
    rows = []
    for e in mu_p_basis(engine.G, engine.p):
        rows.append((engine.evaluate(x, y, e, seed=seed).value, engine.evaluate(y, x, e, seed=seed).value))
    return tuple(rows)


def test_rank_two_matrix_is_seed_independent(engine_3299):
    zm = engine_3299.zassenhaus_matrix()
    assert len(zm.certificates) == 4
    for seed in range(1, 6):
        assert _matrix(engine_3299, seed) == zm.entries


def test_rank_two_certificates_replay(engine_3299):
    zm = engine_3299.zassenhaus_matrix()
    for cert in zm.certificates:
        assert replay_certificate(cert, engine_3299.G) == cert.value


def test_massey_value_is_linear_on_a_rank_two_basis(engine_3299):
    G = engine_3299.G
    K = field_order(G.D)
    x, y = character_basis(G, 3)
    e1, e2 = mu_p_basis(G, 3)

    def value(chi, m):
        return engine_3299.evaluate(x, chi, m).value

    assert value(y, multiply(K, e1, e2)) == (value(y, e1) + value(y, e2)) % 3
    assert value(y, power(K, e2, 2)) == (2 * value(y, e2)) % 3
    # linear in the last slot too; L_x is shared
    assert value(x + y, e1) == (value(x, e1) + value(y, e1)) % 3


def test_matrix_rank_survives_a_change_of_basis(engine_3299):
    """(e1, e2) -> (e1^2, e1 e2) multiplies the matrix by [[2, 0], [1, 1]] on the left."""
    G = engine_3299.G
    K = field_order(G.D)
    x, y = character_basis(G, 3)
    e1, e2 = mu_p_basis(G, 3)
    zm = engine_3299.zassenhaus_matrix()
    rows = []
    for f in (power(K, e1, 2), multiply(K, e1, e2)):
        rows.append([engine_3299.evaluate(x, y, f).value, engine_3299.evaluate(y, x, f).value])
    (a, b), (c, d) = zm.entries
    assert rows == [[2 * a % 3, 2 * b % 3], [(a + c) % 3, (b + d) % 3]]
    assert fp_rank(rows, 3) == zm.rank


def test_time_budget_nesting():
    with time_budget(None):
        check_deadline()
    with time_budget(60):
        with time_budget(1e-9):
            time.sleep(0.001)
            with pytest.raises(TimeLimitExceeded):
                check_deadline()
        check_deadline()
    check_deadline()


def test_search_loops_honour_the_budget():
    with pytest.raises(TimeLimitExceeded):
        with time_budget(1e-9):
            class_group_nf(maximal_order([23, 0, 1]), BoundPolicy.MINKOWSKI)


def test_tiny_time_limit_on_rank_two_field():
    engine = MasseyEngine(class_group(-3299), 3, NativeCubicProvider(), time_limit=1e-6)
    with pytest.raises(TimeLimitExceeded):
        engine.zassenhaus_matrix()
    # the budget ends with the evaluation
    check_deadline()
