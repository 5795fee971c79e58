"""Exact univariate polynomials over Q and Sturm root counting."""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

import sympy
from sympy import Poly, symbols

_t = symbols("t")


def _trim(coefficients: Sequence) -> Tuple[Fraction, ...]:
    out = [Fraction(c) for c in coefficients]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class RationalPolynomial:
    """Polynomial with exact rational coefficients, ascending degree."""

    coefficients: Tuple[Fraction, ...]

    def __init__(self, coefficients: Sequence = ()):
        object.__setattr__(self, "coefficients", _trim(coefficients))

    @classmethod
    def monomial(cls, degree: int, coefficient=1) -> "RationalPolynomial":
        return cls([0] * degree + [coefficient])

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def leading(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def __call__(self, t) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * t + c
        return acc

    def __add__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        n = max(len(self.coefficients), len(other.coefficients))
        a = list(self.coefficients) + [Fraction(0)] * (n - len(self.coefficients))
        b = list(other.coefficients) + [Fraction(0)] * (n - len(other.coefficients))
        return RationalPolynomial([x + y for x, y in zip(a, b)])

    def __neg__(self) -> "RationalPolynomial":
        return RationalPolynomial([-c for c in self.coefficients])

    def __sub__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "RationalPolynomial":
        if not isinstance(other, RationalPolynomial):
            return RationalPolynomial([c * other for c in self.coefficients])
        if self.is_zero() or other.is_zero():
            return RationalPolynomial()
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial([i * c for i, c in enumerate(self.coefficients)][1:])

    def divmod(self, other: "RationalPolynomial") -> Tuple["RationalPolynomial", "RationalPolynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coefficients)
        quot = [Fraction(0)] * max(len(rem) - other.degree, 1)
        lead = other.leading()
        while len(rem) > other.degree and any(rem):
            shift = len(rem) - 1 - other.degree
            f = rem[-1] / lead
            quot[shift] = f
            for i, c in enumerate(other.coefficients):
                rem[shift + i] -= f * c
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        return RationalPolynomial(quot), RationalPolynomial(rem)

    def __mod__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        return self.divmod(other)[0]

    def monic(self) -> "RationalPolynomial":
        return self * (1 / self.leading()) if not self.is_zero() else self

    def gcd(self, other: "RationalPolynomial") -> "RationalPolynomial":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def squarefree_part(self) -> "RationalPolynomial":
        g = self.gcd(self.derivative())
        return (self // g).monic() if g.degree > 0 else self.monic()

    def __repr__(self) -> str:
        terms = [f"{c}*t^{i}" for i, c in enumerate(self.coefficients) if c]
        return " + ".join(terms) or "0"


def sturm_sequence(f: RationalPolynomial) -> List[RationalPolynomial]:
    seq = [f, f.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    return seq[:-1]


def _sign_changes(values: Sequence[Fraction]) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_open_unit_interval(f: RationalPolynomial) -> int:
    """Number of distinct real roots of f in the open interval (0, 1)."""
    if f.is_zero():
        raise ValueError("zero polynomial has no finite root count")
    g = f.squarefree_part()
    for root in (0, 1):
        linear = RationalPolynomial([-root, 1])
        while g.degree > 0 and g(root) == 0:
            g = g // linear
    if g.degree <= 0:
        return 0
    seq = sturm_sequence(g)
    return _sign_changes([s(0) for s in seq]) - _sign_changes([s(1) for s in seq])


def roots_mod(coefficients: Sequence[int], q: int) -> List[int]:
    """Distinct roots in F_q of an integer polynomial (ascending coefficients)."""
    coefficients = [int(c) % q for c in coefficients]
    while coefficients and coefficients[-1] == 0:
        coefficients.pop()
    if len(coefficients) <= 1:
        return []
    if q < 64:
        return [r for r in range(q) if sum(c * pow(r, i, q) for i, c in enumerate(coefficients)) % q == 0]
    poly = Poly(list(reversed(coefficients)), _t, modulus=q)
    roots = []
    for factor, _ in poly.factor_list()[1]:
        if factor.degree() == 1:
            a1, a0 = (int(c) % q for c in factor.all_coeffs())
            roots.append(-a0 * pow(a1, -1, q) % q)
    return sorted(set(roots))


def is_irreducible_over_q(coefficients: Sequence[int]) -> bool:
    return Poly(list(reversed([int(c) for c in coefficients])), _t).is_irreducible


def polynomial_discriminant(coefficients: Sequence[int]) -> int:
    return int(sympy.discriminant(Poly(list(reversed([int(c) for c in coefficients])), _t)))
