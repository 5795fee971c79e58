"""Class groups of imaginary quadratic fields from reduced forms.

Two independent constructions give the same ClassGroupQF:

* enumeration (|D| <= ENUMERATION_LIMIT): the reduced forms fix h, and prime
  forms are adjoined until their subgroup has h elements;
* relations (above): random products of prime forms are reduced and
  refactored over the factor base, the relation lattice goes through Smith
  normal form, and the candidate group is certified by listing its h
  elements and checking that they are distinct reduced forms.
"""

import logging
import math
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import factorint, nextprime

from ..budget import check_deadline
from ..errors import FormWrongDiscriminant, SearchExhausted
from ..linalg.matrices import int_matrix, rational_inverse, smith_normal_form
from .forms import QuadForm, prime_form, principal_form, reduced_forms

logger = logging.getLogger("masseytower.quadratic")

ENUMERATION_LIMIT = 10 ** 7


@dataclass
class ClassGroupQF:
    """Cl(D) as reduced forms: invariant factors d_1 | d_2 | ... and matching generators."""

    D: int
    invariant_factors: Tuple[int, ...]
    generators: Tuple[QuadForm, ...]
    dlog_table: Dict[Tuple[int, int, int], Tuple[int, ...]] = field(repr=False)

    @property
    def order(self) -> int:
        h = 1
        for d in self.invariant_factors:
            h *= d
        return h

    def element(self, exponents: Sequence[int]) -> QuadForm:
        result = principal_form(self.D)
        for g, e in zip(self.generators, exponents):
            result = result.compose(g ** int(e))
        return result

    def to_dict(self) -> dict:
        return {
            "D": self.D,
            "invariant_factors": list(self.invariant_factors),
            "generators": [list(g.as_tuple()) for g in self.generators],
        }


def class_group(D: int) -> ClassGroupQF:
    """Group structure of Cl(D), D < 0 fundamental."""
    if D >= 0:
        raise ValueError("only negative discriminants are supported")
    if -D <= ENUMERATION_LIMIT:
        return class_group_by_enumeration(D)
    return class_group_by_relations(D)


def class_group_by_enumeration(D: int) -> ClassGroupQF:
    """Cl(D) with h taken from the reduced forms.

    Prime forms of increasing norm are adjoined one at a time; each new form
    contributes the relation g^m in <previous>, with m minimal. The resulting
    triangular relation matrix goes through Smith normal form.
    """
    if D >= 0:
        raise ValueError("only negative discriminants are supported")
    h = len(reduced_forms(D))
    identity = principal_form(D)
    members: Dict[Tuple[int, int, int], List[int]] = {identity.as_tuple(): []}
    raw: List[QuadForm] = []
    relations: List[List[int]] = []
    q = 1
    while len(members) < h:
        q = nextprime(q)
        g = prime_form(D, q)
        if g is None or g.as_tuple() in members:
            continue
        k = len(raw)
        power = g
        m = 1
        while power.as_tuple() not in members:
            power = power.compose(g)
            m += 1
        relation = [-v for v in members[power.as_tuple()]] + [0] * (k - len(members[power.as_tuple()]))
        relation.append(m)
        for row in relations:
            row.append(0)
        relations.append(relation)
        raw.append(g)
        grown: Dict[Tuple[int, int, int], List[int]] = {}
        for key, vec in members.items():
            f = QuadForm(*key)
            padded = vec + [0] * (k - len(vec))
            for e in range(m):
                grown[f.as_tuple()] = padded + [e]
                f = f.compose(g)
        members = grown

    r = len(raw)
    if r == 0:
        logger.debug(f"Cl({D}) is trivial")
        return ClassGroupQF(D, (), (), {identity.as_tuple(): ()})

    S, _, V = smith_normal_form(int_matrix(relations, r))
    diagonal = [int(S[i, i]) for i in range(r)]
    keep = [i for i in range(r) if diagonal[i] > 1]
    V_list = [[int(V[i, j]) for j in range(r)] for i in range(r)]
    V_inv = rational_inverse(V_list)

    generators = []
    for i in keep:
        g = identity
        for j in range(r):
            g = g.compose(raw[j] ** int(V_inv[i][j]))
        generators.append(g)

    table: Dict[Tuple[int, int, int], Tuple[int, ...]] = {}
    for key, vec in members.items():
        padded = vec + [0] * (r - len(vec))
        table[key] = tuple(
            sum(padded[k] * V_list[k][i] for k in range(r)) % diagonal[i] for i in keep
        )
    group = ClassGroupQF(D, tuple(diagonal[i] for i in keep), tuple(generators), table)
    logger.debug(f"Cl({D}) = {list(group.invariant_factors)}")
    return group


def _factor_exponents(f: QuadForm, index: Dict[int, int], base: Sequence[QuadForm]) -> Optional[List[int]]:
    """Exponents of a reduced form over the prime forms, or None if f.a is not smooth over them.

    The ideal a Z + ((-b + sqrt D)/2) Z lies above the prime (q, b_q) exactly
    when b = b_q mod 2q.
    """
    vec = [0] * len(base)
    for q, k in factorint(f.a).items():
        j = index.get(q)
        if j is None:
            return None
        vec[j] = k if (f.b - base[j].b) % (2 * q) == 0 else -k
    return vec


def _compose_vector(D: int, base: Sequence[QuadForm], vec: Sequence[int]) -> QuadForm:
    result = principal_form(D)
    for g, e in zip(base, vec):
        if e:
            result = result.compose(g ** int(e))
    return result


def _list_group(identity: QuadForm, generators: Sequence[QuadForm], orders: Sequence[int]):
    """(table, None) with every product of generator powers, or (partial table, colliding pair)."""
    table: Dict[Tuple[int, int, int], Tuple[int, ...]] = {identity.as_tuple(): ()}
    for g, d in zip(generators, orders):
        grown: Dict[Tuple[int, int, int], Tuple[int, ...]] = {}
        for key, vec in table.items():
            f = QuadForm(*key)
            for e in range(d):
                if f.as_tuple() in grown:
                    return grown, (grown[f.as_tuple()], vec + (e,))
                grown[f.as_tuple()] = vec + (e,)
                f = f.compose(g)
        table = grown
    return table, None


def class_group_by_relations(D: int, seed: int = 0, max_draws: int = 100000) -> ClassGroupQF:
    """Cl(D) from random relations among prime forms, certified without knowing h.

    The factor base holds the prime forms with q <= sqrt(|D|/3), which
    generate Cl(D) since every reduced (a, b, c) has a <= sqrt(|D|/3). Every
    relation is checked by composition before it is kept, so the relation
    lattice is always contained in the true one; listing the candidate group
    proves equality, and a collision in the listing is a missing relation.

    Raises:
        SearchExhausted: when max_draws random products were not enough.
    """
    if D >= 0:
        raise ValueError("only negative discriminants are supported")
    identity = principal_form(D)
    base = [f for _, f in prime_forms(D, math.isqrt(-D // 3) + 1)]
    m = len(base)
    if m == 0:
        return ClassGroupQF(D, (), (), {identity.as_tuple(): ()})
    index = {g.a: j for j, g in enumerate(base)}
    rng = random.Random(seed)
    relations: List[List[int]] = []
    draws = 0
    batch = m + 5
    while True:
        while batch > 0:
            check_deadline()
            if draws >= max_draws:
                raise SearchExhausted(f"relations for Cl({D})", draws)
            draws += 1
            e = [0] * m
            for j in rng.sample(range(m), rng.randint(1, min(3, m))):
                e[j] = rng.randint(1, 6)
            f = _compose_vector(D, base, e)
            v = _factor_exponents(f, index, base)
            if v is None or _compose_vector(D, base, v) != f:
                logger.warning(f"Cl({D}): refactoring {f} over the factor base failed")
                continue
            relation = [a - b for a, b in zip(e, v)]
            if any(relation):
                relations.append(relation)
                batch -= 1
        S, _, V = smith_normal_form(int_matrix(relations, m))
        diagonal = [int(S[i, i]) for i in range(min(S.shape))]
        if len(diagonal) < m or 0 in diagonal:
            # not yet of finite index
            batch = 5
            continue
        keep = [i for i in range(m) if diagonal[i] > 1]
        V_list = [[int(V[i, j]) for j in range(m)] for i in range(m)]
        V_inv = rational_inverse(V_list)
        generators = [_compose_vector(D, base, [int(V_inv[i][j]) for j in range(m)]) for i in keep]
        orders = [diagonal[i] for i in keep]
        table, collision = _list_group(identity, generators, orders)
        if collision is None:
            group = ClassGroupQF(D, tuple(orders), tuple(generators), table)
            logger.debug(f"Cl({D}) = {orders} from {len(relations)} relations")
            return group
        first, second = collision
        diff = [a - b for a, b in zip(first, second)]
        missing = [sum(diff[k] * int(V_inv[keep[k]][j]) for k in range(len(diff))) for j in range(m)]
        logger.debug(f"Cl({D}): listing collided, adding relation {missing}")
        relations.append(missing)
        batch = 0


def class_log(G: ClassGroupQF, f: QuadForm) -> Tuple[int, ...]:
    """Exponent vector of the class of f in G's generators."""
    if f.discriminant != G.D:
        raise FormWrongDiscriminant(f, G.D)
    return G.dlog_table[f.reduced().as_tuple()]


def p_rank(G: ClassGroupQF, p: int) -> int:
    """dim_{F_p} Cl / p Cl."""
    return sum(1 for d in G.invariant_factors if d % p == 0)


def element_order(G: ClassGroupQF, f: QuadForm) -> int:
    power = f.reduced()
    identity = principal_form(G.D)
    n = 1
    while power != identity:
        power = power.compose(f)
        n += 1
    return n


def prime_forms(D: int, bound: int) -> List[Tuple[int, QuadForm]]:
    """Forms above the split or ramified primes q <= bound."""
    out = []
    q = 1
    while True:
        q = nextprime(q)
        if q > bound:
            return out
        f = prime_form(D, q)
        if f is not None:
            out.append((q, f))
