"""Positive definite binary quadratic forms of negative discriminant."""

import math
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

from sympy import factorint
from sympy.ntheory.residue_ntheory import sqrt_mod

from ..errors import FormWrongDiscriminant


def is_fundamental_discriminant(D: int) -> bool:
    if D == 1 or D == 0:
        return False
    if D % 4 == 1:
        return all(e == 1 for e in factorint(abs(D)).values())
    if D % 4 == 0:
        m = D // 4
        if m % 4 not in (2, 3):
            return False
        return all(e == 1 for e in factorint(abs(m)).values())
    return False


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Returns (g, u, v) with u*a + v*b = g = gcd(a, b) >= 0."""
    u0, v0, u1, v1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    if a < 0:
        a, u0, v0 = -a, -u0, -v0
    return a, u0, v0


@dataclass(frozen=True)
class QuadForm:
    """The form a x^2 + b xy + c y^2."""

    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def normalized(self) -> "QuadForm":
        a, b, c = self.a, self.b, self.c
        if -a < b <= a:
            return self
        r = (a - b) // (2 * a)
        return QuadForm(a, b + 2 * r * a, a * r * r + b * r + c)

    def reduced(self) -> "QuadForm":
        f = self.normalized()
        a, b, c = f.a, f.b, f.c
        while a > c or (a == c and b < 0):
            s = (c + b) // (c + c)
            a, b, c = c, -b + 2 * s * c, c * s * s - b * s + a
        return QuadForm(a, b, c).normalized()

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def inverse(self) -> "QuadForm":
        return QuadForm(self.a, -self.b, self.c).reduced()

    def compose(self, other: "QuadForm") -> "QuadForm":
        """Gauss composition followed by reduction."""
        if self.discriminant != other.discriminant:
            raise FormWrongDiscriminant(other, self.discriminant)
        D = self.discriminant
        f1, f2 = self, other
        if f1.a > f2.a:
            f1, f2 = f2, f1
        a1, b1, c1 = f1.a, f1.b, f1.c
        a2, b2, c2 = f2.a, f2.b, f2.c
        s = (b1 + b2) // 2
        n = b2 - s
        if a2 % a1 == 0:
            y1, d = 0, a1
        else:
            d, u, _ = xgcd(a2, a1)
            y1 = u
        if s % d == 0:
            y2, x2, d1 = -1, 0, d
        else:
            d1, x2, v = xgcd(s, d)
            y2 = -v
        v1 = a1 // d1
        v2 = a2 // d1
        r = (y1 * y2 * n - x2 * c2) % v1
        b3 = b2 + 2 * v2 * r
        a3 = v1 * v2
        c3 = (b3 * b3 - D) // (4 * a3)
        return QuadForm(a3, b3, c3).reduced()

    def __mul__(self, other: "QuadForm") -> "QuadForm":
        return self.compose(other)

    def __pow__(self, k: int) -> "QuadForm":
        base = self.reduced() if k >= 0 else self.inverse()
        k = abs(k)
        result = principal_form(self.discriminant)
        while k:
            if k & 1:
                result = result.compose(base)
            base = base.compose(base)
            k >>= 1
        return result

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def __repr__(self) -> str:
        return f"({self.a}, {self.b}, {self.c})"


def principal_form(D: int) -> QuadForm:
    b = D % 2
    return QuadForm(1, b, (b - D) // 4)


def prime_form(D: int, q: int) -> Optional[QuadForm]:
    """The reduced class of a form (q, b, c) above the prime q, or None if q is inert."""
    if q == 2:
        r = D % 8
        if r == 1:
            b = 1
        elif r == 5:
            return None
        elif r == 0:
            b = 0
        else:
            b = 2
    elif D % q == 0:
        b = 0 if D % 2 == 0 else q
    else:
        roots = sqrt_mod(D % q, q, all_roots=True)
        if not roots:
            return None
        b = min(roots)
        if (b - D) % 2:
            b = q - b
    c = (b * b - D) // (4 * q)
    form = QuadForm(q, b, c)
    if form.discriminant != D:
        raise FormWrongDiscriminant(form, D)
    return form


def reduced_forms(D: int) -> List[QuadForm]:
    """Every reduced form of discriminant D < 0."""
    out = []
    a_max = math.isqrt(-D // 3)
    for a in range(1, a_max + 1):
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if b < 0 and a == c:
                continue
            out.append(QuadForm(a, b, c))
    return out


def class_number(D: int) -> int:
    return len(reduced_forms(D))


def fundamental_discriminants(start: int, stop: int) -> Iterator[int]:
    """Fundamental discriminants D with start <= D <= stop < 0, ascending in |D|."""
    for D in range(stop, start - 1, -1):
        if is_fundamental_discriminant(D):
            yield D
