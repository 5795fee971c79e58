"""Cubic fields of a given negative fundamental discriminant.

Every complex cubic field F with disc F = D contains an integral generator
alpha with Tr(alpha) in {0, 1} and T2(alpha) <= 1/3 + (2/sqrt 3) sqrt(|D|/3)
(Hunter). The search walks the characteristic polynomials of such alpha,
with the constant term vectorized, and keeps those whose maximal order has
discriminant exactly D. Conjugate generators of one field are merged by
their totally split primes.
"""

import logging
import math
from typing import List, Optional, Sequence, Set, Tuple

import numpy as np
from sympy import factorint, primerange

from ..budget import check_deadline
from ..linalg.polynomials import is_irreducible_over_q, roots_mod
from ..numberfield.algebra import PowerBasisAlgebra
from ..numberfield.order import NumberFieldOrder, maximize
from ..quadratic.classgroup import class_group, p_rank

logger = logging.getLogger("masseytower.extension")

SPLIT_TEST_BOUND = 2000
INT64_SAFE = 2 ** 62


def cubic_discriminant(a: int, b: int, c: int) -> int:
    """disc(t^3 + a t^2 + b t + c)."""
    return a * a * b * b - 4 * b ** 3 - 4 * a ** 3 * c - 27 * c * c + 18 * a * b * c


def _field_discriminant(coefficients: Sequence[int], m: int) -> int:
    algebra = PowerBasisAlgebra(coefficients)
    order = NumberFieldOrder(algebra, [[int(i == k) for i in range(3)] for k in range(3)])
    order = maximize(order, sorted(factorint(m).keys()))
    return order.discriminant


def _split_signature(coefficients: Sequence[int], disc: int) -> Tuple[Set[int], Set[int]]:
    bad, split = set(), set()
    for ell in primerange(2, SPLIT_TEST_BOUND):
        if disc % ell == 0:
            bad.add(ell)
        elif len(roots_mod(coefficients, ell)) == 3:
            split.add(ell)
    return bad, split


def _same_field(first, second) -> bool:
    bad = first[0] | second[0]
    return {ell for ell in first[1] if ell not in bad} == {ell for ell in second[1] if ell not in bad}


def _constant_terms(a: int, b: int, bound: int, D: int) -> np.ndarray:
    """Values c in [-bound, bound] with disc(t^3 + a t^2 + b t + c) = D * square, square > 0."""
    c = np.arange(-bound, bound + 1, dtype=np.int64)
    peak = 27 * bound * bound + 4 * abs(b) ** 3 + 4 * abs(a) ** 3 * bound + a * a * b * b + 18 * abs(a * b) * bound
    if peak >= INT64_SAFE:
        c = c.astype(object)
    disc = a * a * b * b - 4 * b ** 3 - 4 * a ** 3 * c - 27 * c * c + 18 * a * b * c
    mask = (disc < 0) & (disc % D == 0)
    return c[mask]


def cubic_fields_of_discriminant(D: int, expected: Optional[int] = None) -> List[List[int]]:
    """One monic cubic (ascending coefficients) per cubic field of discriminant D.

    Args:
        D: a negative fundamental discriminant.
        expected: number of fields to stop at; defaults to (3^r - 1)/2 with
            r the 3-rank of Cl(D).
    """
    if expected is None:
        r = p_rank(class_group(D), 3)
        expected = (3 ** r - 1) // 2
    if expected == 0:
        return []
    T2 = 1 / 3 + (2 / math.sqrt(3)) * math.sqrt(abs(D) / 3)
    found: List[Tuple[List[int], Tuple[Set[int], Set[int]]]] = []
    for s1 in (0, 1):
        c_bound = int(math.floor((T2 / 3) ** 1.5)) + 1
        lo = int(math.ceil((s1 * s1 - T2) / 2))
        hi = int(math.floor((s1 * s1 + T2) / 2))
        # t^3 - s1 t^2 + s2 t - s3
        a = -s1
        for b in range(lo, hi + 1):
            check_deadline()
            for c in _constant_terms(a, b, c_bound, D):
                c = int(c)
                disc = cubic_discriminant(a, b, c)
                m = math.isqrt(disc // D)
                if m * m * D != disc:
                    continue
                coefficients = [c, b, a, 1]
                if not is_irreducible_over_q(coefficients):
                    continue
                if m > 1 and _field_discriminant(coefficients, m) != D:
                    continue
                signature = _split_signature(coefficients, disc)
                if any(_same_field(signature, known) for _, known in found):
                    continue
                logger.debug(f"cubic field of discriminant {D}: {coefficients}")
                found.append((coefficients, signature))
                if len(found) >= expected:
                    return [f for f, _ in found]
    logger.warning(f"cubic search for D={D} found {len(found)} of {expected} fields")
    return [f for f, _ in found]
