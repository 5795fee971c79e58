"""Fractional ideals in Hermite normal form, prime decomposition, valuations.

A fractional ideal is (1/denominator) times the Z-span of the rows of an
upper Hermite matrix, in the coordinates of the order's integral basis. The
additive view (a divisor) is a dict from PrimeIdeal to exponent.
"""

import logging
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import factorint

from ..linalg.matrices import (
    FpSpace,
    common_denominator,
    fp_left_kernel,
    hermite_normal_form,
    integer_determinant,
    int_matrix,
    rational_inverse,
    rational_vecmat,
)
from ..linalg.polynomials import roots_mod
from .order import NumberFieldOrder, gcd_list, integral_parts

logger = logging.getLogger("masseytower.numberfield")


@dataclass(frozen=True)
class FractionalIdeal:
    hnf: Tuple[Tuple[int, ...], ...]
    denominator: int = 1

    @property
    def is_integral(self) -> bool:
        return self.denominator == 1

    def rows(self) -> List[List[Fraction]]:
        return [[Fraction(v, self.denominator) for v in row] for row in self.hnf]

    def to_dict(self) -> dict:
        return {"hnf": [list(r) for r in self.hnf], "denominator": self.denominator}

    @classmethod
    def from_dict(cls, data: dict) -> "FractionalIdeal":
        return cls(tuple(tuple(int(v) for v in r) for r in data["hnf"]), int(data["denominator"]))


@dataclass(frozen=True)
class PrimeIdeal:
    """A prime of O above the rational prime q, with e and f.

    ``beta`` is an element of (qO : P) outside qO; it drives valuations.
    """

    q: int
    e: int
    f: int
    ideal: FractionalIdeal
    beta: Tuple[int, ...]

    @property
    def norm(self) -> int:
        return self.q ** self.f

    def label(self) -> str:
        return f"P({self.q},{self.hnf_digest()})"

    def hnf_digest(self) -> str:
        return ",".join(str(v) for row in self.ideal.hnf for v in row)

    def __repr__(self) -> str:
        return f"PrimeIdeal(q={self.q}, e={self.e}, f={self.f})"


Divisor = Dict[PrimeIdeal, int]


# construction

def ideal_from_rows(order: NumberFieldOrder, rows: Iterable[Sequence], modulus: Optional[int] = None) -> FractionalIdeal:
    """Z-span of the given elements (order coordinates), which must have full rank."""
    rows = [[Fraction(v) for v in row] for row in rows]
    d = common_denominator(v for row in rows for v in row)
    ints = [[int(v * d) for v in row] for row in rows]
    H = hermite_normal_form(int_matrix(ints, order.degree), modulus=modulus)
    if H.shape[0] != order.degree:
        raise ValueError("elements do not span a full-rank lattice")
    g = math.gcd(gcd_list(int(v) for row in H for v in row), d)
    if g > 1:
        H = hermite_normal_form(int_matrix([[int(v) // g for v in row] for row in H]))
        d //= g
    return FractionalIdeal(tuple(tuple(int(v) for v in row) for row in H), d)


def unit_ideal(order: NumberFieldOrder) -> FractionalIdeal:
    n = order.degree
    return FractionalIdeal(tuple(tuple(int(i == k) for i in range(n)) for k in range(n)), 1)


def principal_ideal(order: NumberFieldOrder, x: Sequence) -> FractionalIdeal:
    if not any(x):
        raise ZeroDivisionError("the zero ideal is not fractional")
    return ideal_from_rows(order, order.multiplication_matrix(x))


def ideal_from_generators(order: NumberFieldOrder, generators: Iterable[Sequence]) -> FractionalIdeal:
    """O-module generated by the given elements."""
    n = order.degree
    rows = []
    for g in generators:
        rows.extend(order.multiplication_matrix(g))
    modulus = None
    ints_ok = all(Fraction(v).denominator == 1 for row in rows for v in row)
    if ints_ok:
        # any nonzero rational integer inside the ideal works as a modulus
        for g in generators:
            if any(g):
                modulus = abs(order.norm(g).numerator)
                break
    if modulus:
        return ideal_from_rows(order, rows, modulus=modulus)
    return ideal_from_rows(order, rows)


# arithmetic

def ideal_norm(ideal: FractionalIdeal) -> Fraction:
    n = len(ideal.hnf)
    det = 1
    for k in range(n):
        det *= ideal.hnf[k][k]
    return Fraction(det, ideal.denominator ** n)


def ideal_multiply(order: NumberFieldOrder, I: FractionalIdeal, J: FractionalIdeal) -> FractionalIdeal:
    rows = []
    for a in I.hnf:
        for b in J.hnf:
            rows.append(order._mul_ints(a, b))
    modulus = 1
    for k in range(order.degree):
        modulus *= I.hnf[k][k] * J.hnf[k][k]
    H =hermite_normal_form(int_matrix(rows, order.degree), modulus=modulus)
    return ideal_from_rows(order, [[Fraction(int(v), I.denominator * J.denominator) for v in row] for row in H])



def dual_lattice(order: NumberFieldOrder, I: FractionalIdeal) -> FractionalIdeal:
    """{x : Tr(x I) in Z}."""
    B = I.rows()
    n = order.degree
    W = [[sum((order.trace_matrix[i][k] * B[j][k] for k in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]
    return ideal_from_rows(order, rational_inverse(W))


def codifferent(order: NumberFieldOrder) -> FractionalIdeal:
    return dual_lattice(order, unit_ideal(order))


def ideal_inverse(order: NumberFieldOrder, I: FractionalIdeal) -> FractionalIdeal:
    """I^-1 = (I * codifferent)^dual."""
    return dual_lattice(order, ideal_multiply(order, I, codifferent(order)))


def ideal_power(order: NumberFieldOrder, I: FractionalIdeal, k: int) -> FractionalIdeal:
    if k < 0:
        return ideal_power(order, ideal_inverse(order, I), -k)
    result = unit_ideal(order)
    base = I
    while k > 0:
        if k & 1:
            result = ideal_multiply(order, result, base)
        k >>= 1
        if k:
            base = ideal_multiply(order, base, base)
    return result


def ideal_contains(order: NumberFieldOrder, I: FractionalIdeal, x: Sequence) -> bool:
    inv = rational_inverse(I.hnf)
    coords = rational_vecmat([Fraction(v) * I.denominator for v in x], inv)
    return all(c.denominator == 1 for c in coords)



# prime decomposition

def _fix_space(order: NumberFieldOrder, q: int, J: FpSpace) -> FpSpace:
    """Elements a of O/qO with a^q - a in J."""
    phi = order.frobenius_matrix(q)
    n = order.degree
    rows = [J.reduce([phi[k][i] - int(i == k) for i in range(n)]) for k in range(n)]
    return FpSpace(q, n, fp_left_kernel(rows, q))


def _minimal_polynomial_mod(order: NumberFieldOrder, c: List[int], q: int, J: FpSpace) -> List[int]:
    n = order.degree
    powers = [J.reduce([1] + [0] * (n - 1))]
    current = [1] + [0] * (n - 1)
    while True:
        current = order.mul_mod(current, c, q)
        powers.append(J.reduce(current))
        kernel = fp_left_kernel(powers, q)
        if kernel:
            relation = kernel[0]
            lead = relation[-1]
            inv = pow(lead, -1, q)
            return [v * inv % q for v in relation]


def _split(order: NumberFieldOrder, q: int, J: FpSpace, rng: random.Random) -> List[FpSpace]:
    n = order.degree
    fix = _fix_space(order, q, J)
    if fix.dim - J.dim <= 1:
        return [J]
    for _ in range(200):
        c = [0] * n
        for row in fix.rows:
            a = rng.randrange(q)
            c = [(x + a * y) % q for x, y in zip(c, row)]
        m = _minimal_polynomial_mod(order, c, q, J)
        if len(m) <= 2:
            continue
        pieces = []
        for r in roots_mod(m, q):
            shifted = list(c)
            shifted[0] = (shifted[0] - r) % q
            generators = [order.mul_mod(shifted, [int(i == k) for i in range(n)], q) for k in range(n)]
            pieces.extend(_split(order, q, J.extended(generators), rng))
        return pieces
    raise RuntimeError(f"splitting of O/{q}O did not converge")


def _beta(order: NumberFieldOrder, P_rows: List[List[int]], q: int) -> Tuple[int, ...]:
    n = order.degree
    images = []
    for k in range(n):
        unit = [int(i == k) for i in range(n)]
        row = []
        for pi in P_rows:
            row.extend(order.mul_mod(unit, pi, q))
        images.append(row)
    kernel = fp_left_kernel(images, q)
    if not kernel:
        raise RuntimeError(f"no uniformizer dual for a prime above {q}")
    return tuple(kernel[0])


def prime_decomposition(order: NumberFieldOrder, q: int) -> List[PrimeIdeal]:
    """Primes of O above the rational prime q, with ramification and residue degrees.

    Works on O/qO directly (radical, then idempotent splitting), so it does
    not care whether q divides the index of a power basis.
    """
    if q in order._prime_cache:
        return order._prime_cache[q]
    n = order.degree
    rng = random.Random(q)
    radical = FpSpace(q, n, order.radical_mod(q))
    maximals = _split(order, q, radical, rng)
    primes = []
    for J in sorted(maximals, key=lambda s: [list(r) for r in s.rows]):
        P = ideal_from_rows(order, [list(r) for r in J.rows] + [[q * int(i == k) for i in range(n)] for k in range(n)], modulus=q)
        beta = _beta(order, [list(r) for r in P.hnf], q)
        partial = PrimeIdeal(q, 0, n - J.dim, P, beta)
        e = valuation(order, partial, order.from_rational(q))
        primes.append(PrimeIdeal(q, e, n - J.dim, P, beta))
    if sum(P.e * P.f for P in primes) != n:
        raise RuntimeError(f"prime decomposition of {q} inconsistent: {primes}")
    order._prime_cache[q] = primes
    return primes


def valuation(order: NumberFieldOrder, P: PrimeIdeal, x: Sequence) -> int:
    """v_P(x) for a nonzero element x."""
    if not any(x):
        raise ValueError("valuation of zero")
    X, d = integral_parts(x)
    v = 0
    e = P.e if P.e else 1
    while d % P.q == 0:
        d //= P.q
        v -= e
    q = P.q
    while True:
        y = order._mul_ints(X, P.beta)
        if any(c % q for c in y):
            return v
        X = [c // q for c in y]
        v += 1


def ideal_valuation(order: NumberFieldOrder, P: PrimeIdeal, I: FractionalIdeal) -> int:
    vals = [valuation(order, P, row) for row in I.hnf if any(row)]
    v = min(vals)
    d = I.denominator
    while d % P.q == 0:
        d //= P.q
        v -= P.e
    return v


def _support_primes(value: Fraction) -> List[int]:
    primes = set(factorint(abs(value.numerator)).keys()) | set(factorint(value.denominator).keys())
    return sorted(p for p in primes if p > 1)


def factor_ideal(order: NumberFieldOrder, I: FractionalIdeal) -> Divisor:
    integral = FractionalIdeal(I.hnf, 1)
    primes = set(_support_primes(ideal_norm(integral))) | set(_support_primes(Fraction(I.denominator)))
    out: Divisor = {}
    for q in sorted(primes):
        for P in prime_decomposition(order, q):
            v = ideal_valuation(order, P, I)
            if v:
                out[P] = v
    return out


def divisor_of_element(order: NumberFieldOrder, x: Sequence) -> Divisor:
    out: Divisor = {}
    for q in _support_primes(order.norm(x)):
        for P in prime_decomposition(order, q):
            v = valuation(order, P, x)
            if v:
                out[P] = v
    return out


def prime_inverse(order: NumberFieldOrder, P: PrimeIdeal) -> FractionalIdeal:
    """P^-1 = O + (beta / q) O."""
    n = order.degree
    rows = [[Fraction(int(i == k)) for i in range(n)] for k in range(n)]
    rows += [[v / P.q for v in row] for row in order.multiplication_matrix(order.element(P.beta))]
    return ideal_from_rows(order, rows)


def ideal_from_divisor(order: NumberFieldOrder, divisor: Divisor) -> FractionalIdeal:
    result = unit_ideal(order)
    for P, v in sorted(divisor.items(), key=lambda kv: (kv[0].q, kv[0].hnf_digest())):
        if v > 0:
            result = ideal_multiply(order, result, ideal_power(order, P.ideal, v))
        elif v < 0:
            result = ideal_multiply(order, result, ideal_power(order, prime_inverse(order, P), -v))
    return result


# divisor algebra

def divisor_add(*divisors: Divisor) -> Divisor:
    out: Divisor = {}
    for D in divisors:
        for P, v in D.items():
            out[P] = out.get(P, 0) + v
    return {P: v for P, v in out.items() if v}


def divisor_scale(D: Divisor, k: int) -> Divisor:
    return {P: k * v for P, v in D.items() if k * v}


def divisor_sub(A: Divisor, B: Divisor) -> Divisor:
    return divisor_add(A, divisor_scale(B, -1))


def divisor_to_list(D: Divisor) -> list:
    return [
        {"q": P.q, "e": P.e, "f": P.f, "hnf": [list(r) for r in P.ideal.hnf], "exponent": v}
        for P, v in sorted(D.items(), key=lambda kv: (kv[0].q, kv[0].hnf_digest()))
    ]


def divisor_from_list(order: NumberFieldOrder, data: list) -> Divisor:
    out: Divisor = {}
    for entry in data:
        hnf = tuple(tuple(int(v) for v in r) for r in entry["hnf"])
        match = next((P for P in prime_decomposition(order, int(entry["q"])) if P.ideal.hnf == hnf), None)
        if match is None:
            raise ValueError(f"no prime above {entry['q']} with the stored basis")
        out[match] = int(entry["exponent"])
    return out
