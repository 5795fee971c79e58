"""Class groups of number fields by factor-base relations, and principality.

Every relation is the divisor of an explicit element, so the relation
lattice is always correct; only its completeness depends on the bound
policy. Principal generators are found by short-vector enumeration and then
re-verified by exact ideal equality.
"""

import logging
import math
import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath
from sympy import primerange

from ..budget import check_deadline
from ..errors import NotPrincipal, PrecisionRetry, RelationSearchExhausted, SearchExhausted
from ..linalg.matrices import int_matrix, rational_inverse, smith_diagonal, smith_normal_form
from .ideals import (
    Divisor,
    FractionalIdeal,
    PrimeIdeal,
    divisor_of_element,
    factor_ideal,
    ideal_multiply,
    ideal_norm,
    ideal_valuation,
    principal_ideal,
    prime_decomposition,
)
from .lattice import gram_matrix, real_images, reduce_basis, short_vectors
from .order import NumberFieldOrder

logger = logging.getLogger("masseytower.numberfield")


class BoundPolicy(Enum):
    MINKOWSKI = "minkowski"
    GRH = "grh"
    HEURISTIC = "heuristic"


def complex_place_count(order: NumberFieldOrder) -> int:
    E = order.embeddings(64)
    sample = [sum((k + 1) * E[k][i] for k in range(order.degree)) for i in range(order.degree)]
    nonreal = sum(1 for z in sample if abs(z.imag) > mpmath.mpf(10) ** -10)
    return nonreal // 2


def minkowski_bound(order: NumberFieldOrder) -> float:
    n = order.degree
    r2 = complex_place_count(order)
    return math.sqrt(abs(order.discriminant)) * (4 / math.pi) ** r2 * math.factorial(n) / n ** n


def factor_base_bound(order: NumberFieldOrder, policy: BoundPolicy) -> int:
    mink = minkowski_bound(order)
    log_d = math.log(max(abs(order.discriminant), 3))
    if policy is BoundPolicy.MINKOWSKI:
        bound = mink
    elif policy is BoundPolicy.GRH:
        bound = min(mink, 12 * log_d ** 2)
    else:
        bound = min(mink, max(0.3 * log_d ** 2, 30.0))
    return max(2, int(math.floor(bound)))


@dataclass
class ClassGroupNF:
    order: NumberFieldOrder
    factor_base: List[PrimeIdeal]
    invariant_factors: Tuple[int, ...]
    diagonal: Tuple[int, ...]
    transform: List[List[int]]
    generators: List[List[int]]
    grh_assumed: bool
    bound: int
    policy: BoundPolicy
    relations: List[Tuple[Tuple, List[int]]] = field(default_factory=list, repr=False)
    _prime_classes: Dict[PrimeIdeal, Tuple[int, ...]] = field(default_factory=dict, repr=False)

    @property
    def order_of_group(self) -> int:
        return math.prod(self.invariant_factors)

    def class_of_exponents(self, vector: Sequence[int]) -> Tuple[int, ...]:
        out = []
        for i, d in enumerate(self.diagonal):
            if d > 1:
                s = sum(int(vector[k]) * self.transform[k][i] for k in range(len(vector)))
                out.append(s % d)
        return tuple(out)

    def reduce_class(self, cls: Sequence[int]) -> Tuple[int, ...]:
        return tuple(int(c) % d for c, d in zip(cls, self.invariant_factors))

    def generator_divisor(self, index: int) -> Divisor:
        return {P: v for P, v in zip(self.factor_base, self.generators[index]) if v}

    def to_dict(self) -> dict:
        return {
            "invariant_factors": list(self.invariant_factors),
            "factor_base_size": len(self.factor_base),
            "bound": self.bound,
            "policy": self.policy.value,
            "grh_assumed": self.grh_assumed,
        }


def _small_primes(bound: int) -> List[int]:
    return list(primerange(2, bound + 1))


def _is_smooth(n: int, primes: Sequence[int]) -> bool:
    n = abs(n)
    if n == 0:
        return False
    for p in primes:
        while n % p == 0:
            n //= p
        if n == 1:
            return True
    return n == 1


def _candidate_elements(order: NumberFieldOrder, ideal: FractionalIdeal, rng: random.Random, count: int, prec: int):
    basis = reduce_basis(order, [list(r) for r in ideal.hnf], prec)
    n = order.degree
    for v in basis:
        yield v
    for _ in range(count):
        coeffs = [rng.choice((-1, 0, 0, 1)) for _ in range(n)]
        if not any(coeffs):
            continue
        yield [sum(coeffs[i] * basis[i][j] for i in range(n)) for j in range(n)]


def class_group_nf(
    order: NumberFieldOrder,
    policy: BoundPolicy = BoundPolicy.GRH,
    seed: int = 0,
    max_attempts: int = 200000,
    extra_relations: int = 12,
) -> ClassGroupNF:
    """Class group from relations among primes of norm up to the policy bound.

    Args:
        order: a maximal order.
        policy: factor base bound policy.
        seed: seeds the random relation search.
        max_attempts: candidate elements tried before giving up.
        extra_relations: relations past full rank required with a stable order.

    Returns:
        The class group with invariant factors, SNF transform and the
        relations (element, exponent vector) that certify it.

    Raises:
        RelationSearchExhausted: if the budget runs out before the relation
            lattice has full rank and a stable determinant.
    """
    rng = random.Random(seed)
    bound = factor_base_bound(order, policy)
    primes = _small_primes(bound)
    factor_base = [P for q in primes for P in prime_decomposition(order, q) if P.norm <= bound]
    index = {P: i for i, P in enumerate(factor_base)}
    m = len(factor_base)
    logger.info(f"class group of degree {order.degree} field, |disc|={abs(order.discriminant)}: "
                f"bound {bound} ({policy.value}), factor base {m}")

    relations: List[Tuple[Tuple, List[int]]] = []
    for q in primes:
        above = prime_decomposition(order, q)
        if all(P in index for P in above):
            vec = [0] * m
            for P in above:
                vec[index[P]] = P.e
            relations.append((order.from_rational(q), vec))

    if m == 0:
        return ClassGroupNF(order, [], (), (), [], [], policy is BoundPolicy.GRH, bound, policy, relations)

    prec = 96 + 16 * order.degree
    attempts = 0
    last_h = None
    stable = 0
    seen = set()
    checked = -1
    while True:
        check_deadline()
        if len(relations) >= m and len(relations) != checked:
            checked = len(relations)
            diag = smith_diagonal(int_matrix([r[1] for r in relations], m))
            h = math.prod(diag) if all(d != 0 for d in diag[:m]) and len(diag) >= m else 0
            if h:
                stable = stable + 1 if h == last_h else 0
                last_h = h
                if stable >= 2 and len(relations) >= m + extra_relations:
                    break
        if attempts > max_attempts:
            raise RelationSearchExhausted(len(relations), m)
        k = rng.randint(1, min(2, m))
        chosen = [rng.randrange(m) for _ in range(k)]
        ideal = factor_base[chosen[0]].ideal
        for c in chosen[1:]:
            ideal = ideal_multiply(order, ideal, factor_base[c].ideal)
        try:
            candidates = list(_candidate_elements(order, ideal, rng, 24, prec))
        except PrecisionRetry:
            prec *= 2
            logger.warning(f"relation search raised precision to {prec} bits")
            continue
        for x in candidates:
            attempts += 1
            key = tuple(x)
            if key in seen or not any(x):
                continue
            seen.add(key)
            norm = order.norm(order.element(x))
            if not _is_smooth(norm.numerator, primes):
                continue
            div = divisor_of_element(order, order.element(x))
            if not all(P in index for P in div):
                continue
            vec = [0] * m
            for P, v in div.items():
                vec[index[P]] = v
            if any(vec):
                relations.append((order.element(x), vec))

    R = int_matrix([r[1] for r in relations], m)
    S, _, V = smith_normal_form(R)
    diagonal = tuple(int(S[i, i]) for i in range(m))
    V_list = [[int(V[i, j]) for j in range(m)] for i in range(m)]
    V_inv = rational_inverse(V_list)
    generators = [[int(V_inv[i][k]) for k in range(m)] for i in range(m) if diagonal[i] > 1]
    invariant = tuple(d for d in diagonal if d > 1)
    logger.info(f"class group invariants {list(invariant)} from {len(relations)} relations")
    cg = ClassGroupNF(order, factor_base, invariant, diagonal, V_list, generators,
                      policy is BoundPolicy.GRH, bound, policy, relations)
    order.class_group = cg
    return cg


def prime_class(order: NumberFieldOrder, cg: ClassGroupNF, P: PrimeIdeal, seed: int = 0) -> Tuple[int, ...]:
    """Class of a prime ideal in the generators of cg."""
    if P in cg._prime_classes:
        return cg._prime_classes[P]
    index = {Q: i for i, Q in enumerate(cg.factor_base)}
    m = len(cg.factor_base)
    if P in index:
        vec = [0] * m
        vec[index[P]] = 1
        cls = cg.class_of_exponents(vec)
        cg._prime_classes[P] = cls
        return cls
    if m == 0:
        cg._prime_classes[P] = ()
        return ()
    rng = random.Random(seed + P.q)
    primes = _small_primes(cg.bound)
    prec = 96 + 16 * order.degree
    for attempt in range(400):
        check_deadline()
        shift = [rng.randrange(m) for _ in range(rng.randint(0, 2))]
        ideal = P.ideal
        for s in shift:
            ideal = ideal_multiply(order, ideal, cg.factor_base[s].ideal)
        try:
            candidates = list(_candidate_elements(order, ideal, rng, 16, prec))
        except PrecisionRetry:
            prec *= 2
            continue
        target_norm = ideal_norm(ideal)
        for x in candidates:
            if not any(x):
                continue
            cofactor = order.norm(order.element(x)) / target_norm
            if not _is_smooth(abs(cofactor).numerator, primes):
                continue
            div = divisor_of_element(order, order.element(x))
            vec = [0] * m
            ok = True
            for Q, v in div.items():
                rest = v - ideal_valuation(order, Q, ideal)
                if rest == 0:
                    continue
                if Q not in index:
                    ok = False
                    break
                vec[index[Q]] += rest
            if not ok:
                continue
            # (x) = ideal * R, so [P] = -[R] - sum [shift]
            total = [-v for v in vec]
            for s in shift:
                total[s] -= 1
            cls = cg.class_of_exponents(total)
            cg._prime_classes[P] = cls
            return cls
    raise SearchExhausted(f"class of prime above {P.q}", 400)


def divisor_class(order: NumberFieldOrder, cg: ClassGroupNF, divisor: Divisor) -> Tuple[int, ...]:
    total = [0] * len(cg.invariant_factors)
    for P, v in divisor.items():
        cls = prime_class(order, cg, P)
        total = [a + v * b for a, b in zip(total, cls)]
    return cg.reduce_class(total)


def ideal_class(order: NumberFieldOrder, cg: ClassGroupNF, ideal: FractionalIdeal) -> Tuple[int, ...]:
    return divisor_class(order, cg, factor_ideal(order, ideal))


def find_generator(order: NumberFieldOrder, ideal: FractionalIdeal, rounds: int = 7, cap: int = 40000) -> Optional[Tuple[Fraction, ...]]:
    """Searches for u with (u) = ideal; returns None when the search gives up."""
    n = order.degree
    d = ideal.denominator
    integral = FractionalIdeal(ideal.hnf, 1)
    target = ideal_norm(integral)
    if target == 1:
        return order.scale(order.one(), Fraction(1, d))
    prec = 96 + 16 * n
    for _ in range(4):
        try:
            basis = reduce_basis(order, [list(r) for r in integral.hnf], prec)
            G = gram_matrix(real_images(order, basis, prec), prec)
            bound = n * float(target) ** (2 / n) * 1.05
            for _ in range(rounds):
                seen = 0
                for coeffs in short_vectors(G, bound, prec):
                    check_deadline()
                    seen += 1
                    if seen > cap:
                        break
                    x = [sum(coeffs[i] * basis[i][j] for i in range(n)) for j in range(n)]
                    element = order.element(x)
                    if abs(order.norm(element)) != target:
                        continue
                    if principal_ideal(order, element) == integral:
                        return order.scale(element, Fraction(1, d))
                bound *= 4
            return None
        except PrecisionRetry:
            prec *= 2
            logger.warning(f"generator search raised precision to {prec} bits")
    return None


def is_principal(order: NumberFieldOrder, ideal: FractionalIdeal, cg: Optional[ClassGroupNF] = None) -> Tuple[Fraction, ...]:
    """Generator u with (u) = ideal, verified exactly.

    Raises:
        NotPrincipal: with the class exponents when the class is nontrivial.
        SearchExhausted: when the class is trivial but no generator was found.
    """
    if cg is not None:
        cls = ideal_class(order, cg, ideal)
        if any(cls):
            raise NotPrincipal(cls)
    u = find_generator(order, ideal)
    if u is None:
        if cg is None:
            raise NotPrincipal(())
        raise SearchExhausted("principal generator", 7)
    return u
