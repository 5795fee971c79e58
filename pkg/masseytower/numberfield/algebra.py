"""Ambient Q-algebras that number fields live in.

An element is a tuple of Fractions in the algebra's own coordinates. Two
shapes are needed: Q[t]/(f) with the power basis, and the tensor product
Q[t]/(f) (x) Q[s]/(g) with basis t^i s^j, which realizes a compositum
without a primitive element.
"""

from abc import ABC, abstractmethod
from fractions import Fraction
from typing import List, Sequence, Tuple

import mpmath

Vector = Tuple[Fraction, ...]


def _reduce_mod(coefficients: List[Fraction], modulus: Sequence[int]) -> List[Fraction]:
    """Reduces an ascending coefficient list modulo a monic polynomial."""
    n = len(modulus) - 1
    out = list(coefficients)
    for k in range(len(out) - 1, n - 1, -1):
        c = out[k]
        if c:
            for i in range(n):
                out[k - n + i] -= c * modulus[i]
            out[k] = Fraction(0)
    out = out[:n] + [Fraction(0)] * max(0, n - len(out))
    return out


def _roots(coefficients: Sequence[int], prec: int) -> List[mpmath.mpc]:
    with mpmath.workprec(prec):
        roots = mpmath.polyroots(list(reversed([int(c) for c in coefficients])), maxsteps=400, extraprec=2 * prec)
    return [mpmath.mpc(r) for r in roots]


class FieldAlgebra(ABC):
    """A finite-dimensional commutative Q-algebra with complex embeddings."""

    degree: int

    @abstractmethod
    def multiply(self, x: Sequence, y: Sequence) -> Vector:
        pass

    @abstractmethod
    def embedding_table(self, prec: int) -> List[List[mpmath.mpc]]:
        """table[a][i] is the image of ambient basis element a under embedding i."""
        pass

    @abstractmethod
    def describe(self) -> dict:
        pass

    def one(self) -> Vector:
        return tuple(Fraction(int(k == 0)) for k in range(self.degree))

    def zero(self) -> Vector:
        return tuple(Fraction(0) for _ in range(self.degree))


class PowerBasisAlgebra(FieldAlgebra):
    """Q[t]/(f) for a monic integer polynomial f (ascending coefficients)."""

    def __init__(self, coefficients: Sequence[int]):
        coefficients = [int(c) for c in coefficients]
        if coefficients[-1] != 1:
            raise ValueError("defining polynomial must be monic")
        self.coefficients = tuple(coefficients)
        self.degree = len(coefficients) - 1

    def multiply(self, x: Sequence, y: Sequence) -> Vector:
        prod = [Fraction(0)] * (2 * self.degree - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        prod[i + j] += a * b
        return tuple(_reduce_mod(prod, self.coefficients))

    def generator(self) -> Vector:
        return tuple(Fraction(int(k == 1)) for k in range(self.degree))

    def embedding_table(self, prec: int) -> List[List[mpmath.mpc]]:
        roots = _roots(self.coefficients, prec)
        with mpmath.workprec(prec):
            return [[r ** a for r in roots] for a in range(self.degree)]

    def describe(self) -> dict:
        return {"kind": "power", "polynomial": list(self.coefficients)}


class TensorAlgebra(FieldAlgebra):
    """Q[t]/(f) (x) Q[s]/(g); basis element t^i s^j sits at index i + deg(f) * j."""

    def __init__(self, first: Sequence[int], second: Sequence[int]):
        self.first = tuple(int(c) for c in first)
        self.second = tuple(int(c) for c in second)
        if self.first[-1] != 1 or self.second[-1] != 1:
            raise ValueError("tensor factors must be monic")
        self.m = len(self.first) - 1
        self.k = len(self.second) - 1
        self.degree = self.m * self.k

    def index(self, i: int, j: int) -> int:
        return i + self.m * j

    def multiply(self, x: Sequence, y: Sequence) -> Vector:
        m, k = self.m, self.k
        grid = [[Fraction(0)] * (2 * k - 1) for _ in range(2 * m - 1)]
        for j1 in range(k):
            for i1 in range(m):
                a = x[i1 + m * j1]
                if not a:
                    continue
                for j2 in range(k):
                    for i2 in range(m):
                        b = y[i2 + m * j2]
                        if b:
                            grid[i1 + i2][j1 + j2] += a * b
        # reduce the t-direction column by column, then the s-direction row by row
        by_s = []
        for j in range(2 * k - 1):
            by_s.append(_reduce_mod([grid[i][j] for i in range(2 * m - 1)], self.first))
        out = [Fraction(0)] * self.degree
        for i in range(m):
            reduced = _reduce_mod([by_s[j][i] for j in range(2 * k - 1)], self.second)
            for j in range(k):
                out[i + m * j] = reduced[j]
        return tuple(out)

    def first_generator(self) -> Vector:
        v = [Fraction(0)] * self.degree
        v[self.index(1, 0)] = Fraction(1)
        return tuple(v)

    def second_generator(self) -> Vector:
        v = [Fraction(0)] * self.degree
        v[self.index(0, 1)] = Fraction(1)
        return tuple(v)

    def factor_roots(self, prec: int) -> Tuple[List[mpmath.mpc], List[mpmath.mpc]]:
        """Complex roots of both factors; embedding a * k + b sends (t, s) to (r1[a], r2[b])."""
        return _roots(self.first, prec), _roots(self.second, prec)

    def embedding_table(self, prec: int) -> List[List[mpmath.mpc]]:
        r1, r2 = self.factor_roots(prec)
        pairs = [(a, b) for a in r1 for b in r2]
        with mpmath.workprec(prec):
            table = [None] * self.degree
            for j in range(self.k):
                for i in range(self.m):
                    table[self.index(i, j)] = [a ** i * b ** j for a, b in pairs]
        return table

    def describe(self) -> dict:
        return {"kind": "tensor", "first": list(self.first), "second": list(self.second)}
