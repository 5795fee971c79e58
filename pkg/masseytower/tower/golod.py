"""Golod-Shafarevich positivity and the Zassenhaus polynomial."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import FrozenSet, List, Sequence, Set, Tuple

from ..linalg.polynomials import RationalPolynomial, count_roots_open_unit_interval

logger = logging.getLogger("masseytower.tower")


@dataclass(frozen=True)
class PresentationProfile:
    """d generators and the Zassenhaus depths of the relations of a minimal presentation."""

    d: int
    relation_depths: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if any(k < 2 for k in self.relation_depths):
            raise ValueError("relations of a minimal presentation lie in depth >= 2")

    def gs_polynomial(self) -> RationalPolynomial:
        """1 - d t + sum_k r_k t^k."""
        out = RationalPolynomial([1, -self.d])
        for k in self.relation_depths:
            out = out + RationalPolynomial.monomial(k)
        return out


def zassenhaus_polynomial(i: int, j: int) -> RationalPolynomial:
    """t^i + t^j - 2t + 1."""
    if not 3 <= i <= j:
        raise ValueError("expected 3 <= i <= j")
    return RationalPolynomial([1, -2]) + RationalPolynomial.monomial(i) + RationalPolynomial.monomial(j)


def gs_positive(d: int, depths: Sequence[int]) -> bool:
    """Whether 1 - d t + sum t^k stays positive on (0, 1).

    Exact: no root in the open interval and a positive value at 1/2.
    """
    f = PresentationProfile(d, tuple(depths)).gs_polynomial()
    if count_roots_open_unit_interval(f):
        return False
    return f(Fraction(1, 2)) > 0


def admissible_types(j_max: int, d: int = 2, odd_depths: bool = True) -> Set[Tuple[int, int]]:
    """Zassenhaus types (i, j), 3 <= i <= j <= j_max, allowed for a finite group.

    Complex conjugation acts by -1 on the relations of an imaginary quadratic
    field, so relation depths are odd (Koch-Venkov); ``odd_depths=False``
    drops that constraint and filters by positivity alone.
    """
    step = 2 if odd_depths else 1
    out = set()
    for i in range(3, j_max + 1, step):
        for j in range(i, j_max + 1, step):
            if gs_positive(d, (i, j)):
                out.add((i, j))
    logger.debug(f"admissible types up to {j_max}: {sorted(out)}")
    return out


def roots_in_unit_interval(types: Sequence[Tuple[int, int]]) -> List[Tuple[Tuple[int, int], int]]:
    """Root counts of the Zassenhaus polynomials of each type, for reports."""
    return [((i, j), count_roots_open_unit_interval(zassenhaus_polynomial(i, j))) for i, j in types]


FINITE_TYPES: FrozenSet[Tuple[int, int]] = frozenset({(3, 3), (3, 5), (3, 7)})
