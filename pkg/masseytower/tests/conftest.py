"""Fixtures shared by the rank-two tests."""

import pytest

from masseytower.extension.provider import NativeCubicProvider
from masseytower.massey.engine import MasseyEngine
from masseytower.quadratic.classgroup import class_group


@pytest.fixture(scope="session")
def engine_3299():
    """Engine for Cl(-3299) = Z/3 x Z/9, the smallest 3-rank two field; L_x and Cl(L_x) are cached on it."""
    return MasseyEngine(class_group(-3299), 3, NativeCubicProvider(), time_limit=None)
