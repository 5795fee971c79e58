"""Ideals of O_K against forms: a Z + ((-b + sqrt D)/2) Z <-> (a, b, c)."""

from fractions import Fraction
from functools import lru_cache

from ..numberfield.ideals import FractionalIdeal, ideal_from_rows
from ..numberfield.order import NumberFieldOrder, gcd_list, quadratic_order
from .forms import QuadForm, xgcd


@lru_cache(maxsize=64)
def field_order(D: int) -> NumberFieldOrder:
    """O_K with basis {1, w}, w = (D + sqrt D)/2, shared per discriminant."""
    return quadratic_order(D)


def form_to_ideal(order: NumberFieldOrder, D: int, f: QuadForm) -> FractionalIdeal:
    # (-b + sqrt D)/2 = (-b - D)/2 + w
    return ideal_from_rows(order, [[f.a, 0], [Fraction(-f.b - D, 2), 1]])


def ideal_to_form(D: int, ideal: FractionalIdeal) -> QuadForm:
    """Reduced form in the class of the ideal; scaling by rationals is ignored."""
    (h00, h01), (_, h11) = ideal.hnf
    g = gcd_list([h00, h01, h11])
    h00, h01, h11 = h00 // g, h01 // g, h11 // g
    a = h00 * h11
    # element (t, 1) of the primitive lattice {(m h00, m h01 + n h11)}
    _, m, _ = xgcd(h01, h11)
    t = (m * h00) % a
    b = -(2 * t + D)
    b = ((b + a) % (2 * a)) - a
    c = (b * b - D) // (4 * a)
    return QuadForm(a, b, c).reduced()
