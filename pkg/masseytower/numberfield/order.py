"""Orders in number fields and the Round 2 maximal order algorithm."""

import logging
import math
import random
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath
from sympy import factorint

from ..errors import ReduciblePolynomial
from ..linalg.matrices import (
    common_denominator,
    fp_left_kernel,
    fp_matmul,
    hermite_normal_form,
    integer_determinant,
    int_matrix,
    lower_hermite_normal_form,
    rational_inverse,
    rational_vecmat,
)
from ..linalg.polynomials import is_irreducible_over_q, polynomial_discriminant
from .algebra import FieldAlgebra, PowerBasisAlgebra

logger = logging.getLogger("masseytower.numberfield")

Element = Tuple[Fraction, ...]


def integral_parts(x: Sequence) -> Tuple[List[int], int]:
    """Writes x as (integer vector) / d with d the least common denominator."""
    d = common_denominator(x)
    return [int(Fraction(v) * d) for v in x], d


class NumberFieldOrder:
    """An order of a number field, given by a Z-basis inside an ambient algebra.

    Elements are tuples of Fractions in the coordinates of this basis; an
    element is integral exactly when all its coordinates are integers (for a
    maximal order). ``basis`` is lower triangular with respect to the ambient
    coordinates, so the first basis element is 1.
    """

    def __init__(self, algebra: FieldAlgebra, basis: Sequence[Sequence], label: str = ""):
        self.algebra = algebra
        self.degree = algebra.degree
        self.label = label
        self.basis: Tuple[Element, ...] = tuple(tuple(Fraction(v) for v in row) for row in basis)
        if len(self.basis) != self.degree:
            raise ValueError("basis size does not match algebra degree")
        self.basis_inverse = rational_inverse(self.basis)
        n = self.degree
        table = []
        for i in range(n):
            row = []
            for j in range(n):
                coords = rational_vecmat(algebra.multiply(self.basis[i], self.basis[j]), self.basis_inverse)
                if any(c.denominator != 1 for c in coords):
                    raise ValueError("basis does not span a ring")
                row.append(tuple(int(c) for c in coords))
            table.append(row)
        self.table = table
        self.basis_traces = [sum(table[l][k][k] for k in range(n)) for l in range(n)]
        self.trace_matrix = [
            [sum(table[i][j][l] * self.basis_traces[l] for l in range(n)) for j in range(n)] for i in range(n)
        ]
        self.discriminant = integer_determinant(int_matrix(self.trace_matrix))
        self._prime_cache: Dict[int, list] = {}
        self._frobenius_cache: Dict[int, List[List[int]]] = {}
        self._embedding_cache: Dict[int, list] = {}
        self.class_group = None

    def __repr__(self) -> str:
        return f"NumberFieldOrder({self.label or self.algebra.describe()}, disc={self.discriminant})"

    # coordinates

    def from_ambient(self, v: Sequence) -> Element:
        return tuple(rational_vecmat(v, self.basis_inverse))

    def to_ambient(self, x: Sequence) -> Element:
        return tuple(rational_vecmat(x, self.basis))

    def one(self) -> Element:
        return tuple(Fraction(int(k == 0)) for k in range(self.degree))

    def zero(self) -> Element:
        return tuple(Fraction(0) for _ in range(self.degree))

    def element(self, coords: Sequence) -> Element:
        return tuple(Fraction(c) for c in coords)

    def from_rational(self, c) -> Element:
        return tuple(Fraction(c) if k == 0 else Fraction(0) for k in range(self.degree))

    def is_integral(self, x: Sequence) -> bool:
        return all(Fraction(c).denominator == 1 for c in x)

    # ring operations

    def add(self, x: Sequence, y: Sequence) -> Element:
        return tuple(Fraction(a) + b for a, b in zip(x, y))

    def sub(self, x: Sequence, y: Sequence) -> Element:
        return tuple(Fraction(a) - b for a, b in zip(x, y))

    def neg(self, x: Sequence) -> Element:
        return tuple(-Fraction(a) for a in x)

    def scale(self, x: Sequence, c) -> Element:
        return tuple(Fraction(a) * c for a in x)

    def _mul_ints(self, X: Sequence[int], Y: Sequence[int]) -> List[int]:
        n = self.degree
        out = [0] * n
        for i, a in enumerate(X):
            if not a:
                continue
            Ti = self.table[i]
            for j, b in enumerate(Y):
                if not b:
                    continue
                ab = a * b
                row = Ti[j]
                for k in range(n):
                    if row[k]:
                        out[k] += ab * row[k]
        return out

    def mul(self, x: Sequence, y: Sequence) -> Element:
        X, dx = integral_parts(x)
        Y, dy = integral_parts(y)
        d = dx * dy
        return tuple(Fraction(v, d) for v in self._mul_ints(X, Y))

    def mul_mod(self, X: Sequence[int], Y: Sequence[int], q: int) -> List[int]:
        return [v % q for v in self._mul_ints(X, Y)]

    def power_mod(self, X: Sequence[int], e: int, q: int) -> List[int]:
        result = [1 % q] + [0] * (self.degree - 1)
        base = [int(v) % q for v in X]
        while e > 0:
            if e & 1:
                result = self.mul_mod(result, base, q)
            base = self.mul_mod(base, base, q)
            e >>= 1
        return result

    def multiplication_matrix(self, x: Sequence) -> List[List[Fraction]]:
        """Row k holds the coordinates of (basis element k) * x."""
        n = self.degree
        return [list(self.mul(tuple(Fraction(int(i == k)) for i in range(n)), x)) for k in range(n)]

    def norm(self, x: Sequence) -> Fraction:
        M = self.multiplication_matrix(x)
        d = common_denominator(v for row in M for v in row)
        det = integer_determinant(int_matrix([[int(v * d) for v in row] for row in M]))
        return Fraction(det, d ** self.degree)

    def inverse(self, x: Sequence) -> Element:
        if not any(x):
            raise ZeroDivisionError("inverse of zero")
        return tuple(rational_inverse(self.multiplication_matrix(x))[0])

    def divide(self, x: Sequence, y: Sequence) -> Element:
        return self.mul(x, self.inverse(y))

    def power(self, x: Sequence, k: int) -> Element:
        if k < 0:
            return self.power(self.inverse(x), -k)
        result = self.one()
        base = tuple(Fraction(v) for v in x)
        while k > 0:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def random_element(self, rng: random.Random, bound: int = 2) -> Element:
        return tuple(Fraction(rng.randint(-bound, bound)) for _ in range(self.degree))

    # numerics

    def embeddings(self, prec: int = 128) -> List[List[mpmath.mpc]]:
        """E[k][i]: image of basis element k under complex embedding i."""
        if prec not in self._embedding_cache:
            ambient = self.algebra.embedding_table(prec)
            with mpmath.workprec(prec):
                table = []
                for row in self.basis:
                    images = [mpmath.mpc(0)] * self.degree
                    for a, c in enumerate(row):
                        if c:
                            cf = mpmath.mpf(c.numerator) / c.denominator
                            images = [v + cf * w for v, w in zip(images, ambient[a])]
                    table.append(images)
            self._embedding_cache[prec] = table
        return self._embedding_cache[prec]

    # reduction mod q

    def frobenius_matrix(self, q: int) -> List[List[int]]:
        """Rows are the basis elements raised to the q-th power, mod q."""
        if q not in self._frobenius_cache:
            n = self.degree
            self._frobenius_cache[q] = [
                self.power_mod([int(i == k) for i in range(n)], q, q) for k in range(n)
            ]
        return self._frobenius_cache[q]

    def radical_mod(self, q: int) -> List[List[int]]:
        """F_q-basis of the nilradical of O/qO: the kernel of Frobenius^j with q^j >= n."""
        phi = self.frobenius_matrix(q)
        power = phi
        j = 1
        while q ** j < self.degree:
            power = fp_matmul(power, phi, q)
            j += 1
        return fp_left_kernel(power, q)


def order_from_basis(algebra: FieldAlgebra, rows: Sequence[Sequence], label: str = "") -> NumberFieldOrder:
    """Canonical (lower Hermite) basis of the Z-span of ``rows`` in ambient coordinates."""
    d = common_denominator(v for row in rows for v in row)
    ints = int_matrix([[int(Fraction(v) * d) for v in row] for row in rows])
    H = lower_hermite_normal_form(ints)
    basis = [[Fraction(int(v), d) for v in row] for row in H]
    if basis[0][0] != 1:
        raise ValueError("lattice does not meet Q in Z; not an order")
    return NumberFieldOrder(algebra, basis, label)


def enlarge_at(order: NumberFieldOrder, q: int) -> Optional[NumberFieldOrder]:
    """One Round 2 step at q: the multiplier ring of the q-radical, or None if q-maximal."""
    n = order.degree
    radical = order.radical_mod(q)
    I = hermite_normal_form(int_matrix(radical + [[q * int(i == k) for i in range(n)] for k in range(n)]), modulus=q)
    I_rows = [[int(v) for v in row] for row in I]
    I_inv = rational_inverse(I_rows)
    images = []
    for k in range(n):
        unit = [int(i == k) for i in range(n)]
        row = []
        for beta in I_rows:
            coords = rational_vecmat(order._mul_ints(unit, beta), I_inv)
            row.extend(int(c) % q for c in coords)
        images.append(row)
    kernel = fp_left_kernel(images, q)
    if not kernel:
        return None
    U = hermite_normal_form(int_matrix(kernel + [[q * int(i == k) for i in range(n)] for k in range(n)]), modulus=q)
    ambient = [order.to_ambient([Fraction(int(v), q) for v in row]) for row in U]
    return order_from_basis(order.algebra, ambient, order.label)


def maximize(order: NumberFieldOrder, primes: Sequence[int]) -> NumberFieldOrder:
    for q in primes:
        while True:
            bigger = enlarge_at(order, q)
            if bigger is None:
                break
            logger.debug(f"Round 2 at {q}: disc {order.discriminant} -> {bigger.discriminant}")
            order = bigger
    return order


def maximal_order(coefficients: Sequence[int], label: str = "") -> NumberFieldOrder:
    """Maximal order of Q[t]/(f) for a monic irreducible integer polynomial f.

    Args:
        coefficients: ascending coefficients of f.

    Returns:
        The order, p-maximal at every prime dividing disc(f).

    Raises:
        ReduciblePolynomial: if f factors over Q.
    """
    coefficients = [int(c) for c in coefficients]
    if len(coefficients) < 2 or not is_irreducible_over_q(coefficients):
        raise ReduciblePolynomial(coefficients)
    algebra = PowerBasisAlgebra(coefficients)
    n = algebra.degree
    order = NumberFieldOrder(algebra, [[int(i == k) for i in range(n)] for k in range(n)], label)
    disc = abs(polynomial_discriminant(coefficients))
    candidates = [q for q, e in sorted(factorint(disc).items()) if e >= 2]
    order = maximize(order, candidates)
    logger.debug(f"maximal order of {coefficients}: disc {order.discriminant}")
    return order


def quadratic_order(D: int) -> NumberFieldOrder:
    """O_K for K = Q(sqrt D), D a fundamental discriminant, basis {1, (D + sqrt D)/2}."""
    algebra = PowerBasisAlgebra([-D, 0, 1])
    half = Fraction(1, 2)
    return NumberFieldOrder(algebra, [[1, 0], [D * half, half]], label=f"Q(sqrt({D}))")


def tensor_order(algebra, first: NumberFieldOrder, second: NumberFieldOrder, label: str = "") -> NumberFieldOrder:
    """The order first (x) second inside a TensorAlgebra built on their algebras."""
    rows = []
    for b in second.basis:
        for a in first.basis:
            v = [Fraction(0)] * algebra.degree
            for i, ca in enumerate(a):
                for j, cb in enumerate(b):
                    if ca and cb:
                        v[algebra.index(i, j)] += ca * cb
            rows.append(v)
    return order_from_basis(algebra, rows, label)


def gcd_list(values: Sequence[int]) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, int(v))
    return g
