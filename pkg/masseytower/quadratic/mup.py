"""Classes (a', J) in H^1(X, mu_p): ideals J with J^p = (a')^-1.

For imaginary quadratic K other than Q(i), Q(sqrt -3) the units are +-1,
so these classes are exactly Cl(K)[p].
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from ..errors import HypothesisViolated, NoPTorsion, SearchExhausted
from ..numberfield.classgroup import find_generator
from ..numberfield.ideals import (
    FractionalIdeal,
    divisor_add,
    divisor_of_element,
    divisor_scale,
    factor_ideal,
    ideal_multiply,
    ideal_power,
    principal_ideal,
    unit_ideal,
)
from ..numberfield.order import NumberFieldOrder
from .bridge import field_order, form_to_ideal, ideal_to_form
from .characters import p_torsion_generators
from .classgroup import ClassGroupQF, class_log, p_rank

logger = logging.getLogger("masseytower.quadratic")


@dataclass(frozen=True)
class MuPClass:
    """a_prime is in coordinates of O_K = Z[1, (D + sqrt D)/2]."""

    a_prime: Tuple[Fraction, ...]
    J: FractionalIdeal

    def to_dict(self) -> dict:
        return {"a_prime": [str(c) for c in self.a_prime], "J": self.J.to_dict()}

    @classmethod
    def from_dict(cls, data: dict) -> "MuPClass":
        return cls(tuple(Fraction(c) for c in data["a_prime"]), FractionalIdeal.from_dict(data["J"]))


def trivial_class(order: NumberFieldOrder) -> MuPClass:
    return MuPClass(order.one(), unit_ideal(order))


def is_trivial(order: NumberFieldOrder, m: MuPClass) -> bool:
    return m.J == unit_ideal(order) and m.a_prime == order.one()


def check_relation(order: NumberFieldOrder, m: MuPClass, p: int) -> bool:
    """div(a') + pJ = 0."""
    return not divisor_add(divisor_of_element(order, m.a_prime), divisor_scale(factor_ideal(order, m.J), p))


def multiply(order: NumberFieldOrder, m1: MuPClass, m2: MuPClass) -> MuPClass:
    return MuPClass(order.mul(m1.a_prime, m2.a_prime), ideal_multiply(order, m1.J, m2.J))


def power(order: NumberFieldOrder, m: MuPClass, s: int) -> MuPClass:
    return MuPClass(order.power(m.a_prime, s), ideal_power(order, m.J, s))


def from_ideal(order: NumberFieldOrder, J: FractionalIdeal, p: int) -> MuPClass:
    """(a', J) with a' a generator of J^-p."""
    Jp = ideal_power(order, J, p)
    u = find_generator(order, Jp)
    if u is None:
        raise SearchExhausted(f"generator of J^{p}", 7)
    return MuPClass(order.inverse(u), J)


def mu_p_basis(G: ClassGroupQF, p: int) -> List[MuPClass]:
    """One class (a', J) per basis element g_i^(d_i/p) of Cl(K)[p].

    A field with p not dividing h has an empty basis, but that is reported
    as NoPTorsion rather than returned as []: every caller needs p-rank 2
    and would otherwise have to test for the empty case itself.

    Raises:
        HypothesisViolated: for even p or D in {-3, -4}.
        NoPTorsion: when Cl(K) has p-rank 0.
    """
    if p % 2 == 0:
        raise HypothesisViolated(f"p={p} is not odd")
    if G.D in (-3, -4):
        raise HypothesisViolated(f"D={G.D} has units beyond +-1")
    if p_rank(G, p) == 0:
        raise NoPTorsion(G.D, p)
    order = field_order(G.D)
    basis = []
    for f in p_torsion_generators(G, p):
        J = form_to_ideal(order, G.D, f)
        m = from_ideal(order, J, p)
        if principal_ideal(order, m.a_prime) != ideal_power(order, J, -p):
            raise RuntimeError(f"generator of J^{p} for {f} failed verification")
        basis.append(m)
    logger.debug(f"mu_{p} basis for D={G.D}: {[class_log(G, ideal_to_form(G.D, m.J)) for m in basis]}")
    return basis
