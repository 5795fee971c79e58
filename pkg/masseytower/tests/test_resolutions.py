"""The group ring Z[G_x x G_y] and the certified resolution ladder."""

import random

import pytest

from masseytower.errors import IdentityFailed
from masseytower.resolutions.group_ring import Generators, GroupRingElement, Quotient, ring_axioms_hold
from masseytower.resolutions.ladder import build_ladder
from masseytower.resolutions.verify import verify_complex, verify_exactness_modp


def test_group_ring_basics():
    g = Generators(3)
    assert g.Tx ** 3 == g.one
    assert g.ux * g.Dx == g.zero
    assert g.uy * g.Gy == GroupRingElement.scalar(3, 3) - g.Dy
    assert g.Dx.augmentation() == 3
    assert ring_axioms_hold(5, random.Random(0))


def test_quotient_coordinates():
    g = Generators(3)
    assert Quotient.Y.reduce(g.Ty) == (1, 1)
    assert Quotient.XY.reduce(g.Tx * g.Ty) == (1, 1, 1, 1)
    assert Quotient.XY.reduce(g.ux * g.ux) == (0, 0, 0, 0)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_ladder_identities(p):
    report = verify_complex(build_ladder(p))
    assert report.passed
    assert all(line.endswith("pass") for line in report.table())


@pytest.mark.parametrize("p", [3, 5, 7])
def test_ladder_homology(p):
    report = verify_exactness_modp(build_ladder(p))
    assert report.passed
    assert set(report.homology.values()) <= {Quotient.Y.dim, Quotient.XY.dim}


def test_corrupted_entry_is_caught():
    ladder = build_ladder(3).corrupted("delta^{-1,-1}", 0, 2)
    with pytest.raises(IdentityFailed):
        verify_complex(ladder)
    assert not verify_complex(ladder, raise_on_failure=False).passed


def test_even_prime_is_rejected():
    with pytest.raises(ValueError):
        build_ladder(2)
