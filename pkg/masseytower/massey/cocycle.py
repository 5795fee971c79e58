"""Dual cocycles (b, a, J, I) over L_x and the lift of a mu_p class (a', J).

A quadruple is a dual cocycle when, multiplicatively,

    sigma(b)/b * a^p / i(N a) = 1
    div(b) + p I = 0
    div(a) + i(J) + (1 - sigma) I = 0

with b, a in L_x^*, J a divisor of K and I a divisor of L_x.
"""

import logging
import random
from dataclasses import dataclass
from typing import Optional, Tuple

from ..errors import LiftObstructed, SearchExhausted
from ..numberfield.classgroup import find_generator
from ..numberfield.ideals import (
    Divisor,
    divisor_add,
    divisor_of_element,
    divisor_scale,
    divisor_to_list,
    factor_ideal,
    ideal_from_divisor,
    ideal_power,
    ideal_multiply,
)
from ..quadratic.bridge import form_to_ideal, ideal_to_form
from ..quadratic.characters import CharacterModP
from ..quadratic.classgroup import class_log
from ..quadratic.mup import MuPClass, is_trivial
from ..relative.maps import Element, RelativeMaps

logger = logging.getLogger("masseytower.massey")


@dataclass(frozen=True)
class DualCocycle:
    b: Element
    a: Element
    J: Tuple[Tuple[object, int], ...]
    I: Tuple[Tuple[object, int], ...]

    @classmethod
    def build(cls, b: Element, a: Element, J: Divisor, I: Divisor) -> "DualCocycle":
        return cls(tuple(b), tuple(a), _freeze(J), _freeze(I))

    @property
    def J_divisor(self) -> Divisor:
        return dict(self.J)

    @property
    def I_divisor(self) -> Divisor:
        return dict(self.I)

    def to_dict(self) -> dict:
        return {
            "b": [str(c) for c in self.b],
            "a": [str(c) for c in self.a],
            "J": divisor_to_list(self.J_divisor),
            "I": divisor_to_list(self.I_divisor),
        }


def _freeze(D: Divisor) -> Tuple[Tuple[object, int], ...]:
    return tuple(sorted(((P, v) for P, v in D.items() if v), key=lambda kv: (kv[0].q, kv[0].hnf_digest())))


def cocycle_defects(maps: RelativeMaps, z: DualCocycle) -> Tuple[bool, bool, bool]:
    """Which of the three defining relations hold, in order."""
    L, p = maps.L, maps.p
    unit = L.mul(L.divide(maps.sigma(z.b), z.b), L.divide(L.power(z.a, p), maps.norm_in_L(z.a)))
    first = unit == L.one()
    second = not divisor_add(divisor_of_element(L, z.b), divisor_scale(z.I_divisor, p))
    third = not divisor_add(
        divisor_of_element(L, z.a), maps.extend_divisor(z.J_divisor), maps.one_minus_sigma(z.I_divisor)
    )
    return first, second, third


def is_dual_cocycle(maps: RelativeMaps, z: DualCocycle) -> bool:
    return all(cocycle_defects(maps, z))


def _class_of(maps: RelativeMaps, D: Divisor) -> Tuple[int, ...]:
    G = maps.base_group
    return class_log(G, ideal_to_form(G.D, ideal_from_divisor(maps.K, D)))


def _pth_root_class(maps: RelativeMaps, cls: Tuple[int, ...]) -> Optional[Tuple[int, ...]]:
    """e with p e = cls in Cl(K), or None when cls is outside p Cl(K)."""
    p = maps.p
    out = []
    for c, d in zip(cls, maps.base_group.invariant_factors):
        if d % p == 0:
            if c % p:
                return None
            out.append((c // p) % d)
        else:
            out.append(c * pow(p, -1, d) % d)
    return tuple(out)


def _canonical_principal(maps: RelativeMaps, m: MuPClass) -> Optional[DualCocycle]:
    """(b, a, J, I) = (1, i(+-v^-1), J, 0) when J = (v)."""
    K, L = maps.K, maps.L
    v = find_generator(K, m.J)
    if v is None:
        return None
    v_inv = K.inverse(v)
    candidate = K.power(v_inv, maps.p)
    if candidate != tuple(m.a_prime):
        if K.neg(candidate) != tuple(m.a_prime):
            return None
        v_inv = K.neg(v_inv)
    return DualCocycle.build(L.one(), maps.embed(v_inv), factor_ideal(K, m.J), {})


def lift_dual_cocycle(maps: RelativeMaps, m: MuPClass, rng: Optional[random.Random] = None) -> DualCocycle:
    """A dual cocycle (b, a, J, I) with N(a) = a'.

    Steps: a from the norm equation; b0 from Hilbert 90 on i(a')/a^p; then b0
    is rescaled by t in K^* so that div(b) becomes p-divisible, which needs
    the class of div(b0) restricted to K to lie in p Cl(K).

    Raises:
        LiftObstructed: with the class exponents of the obstruction.
    """
    K, L, p = maps.K, maps.L, maps.p
    rng = rng or random.Random(maps.seed)
    J = factor_ideal(K, m.J)
    if is_trivial(K, m):
        return DualCocycle.build(L.one(), L.one(), {}, {})
    canonical = _canonical_principal(maps, m)
    if canonical is not None:
        logger.debug("J is principal, using the canonical lift")
        return canonical

    a = maps.solve_norm_element(m.a_prime)
    c = L.divide(maps.embed(m.a_prime), L.power(a, p))
    b0 = maps.hilbert90(c, rng)

    # div(b0) is congruent mod p to i(D0) for a divisor D0 of K
    div_b0 = divisor_of_element(L, b0)
    D0: Divisor = {}
    seen = set()
    for P, v in div_b0.items():
        Q = maps.below(P)
        if Q in seen:
            continue
        seen.add(Q)
        above = maps.primes_above(Q)
        values = {div_b0.get(R, 0) % p for R in above}
        if len(values) != 1:
            raise RuntimeError(f"div(b0) is not sigma-invariant mod {p} above {Q.label()}")
        D0[Q] = v
    D0 = {Q: v for Q, v in D0.items() if v % p}

    t = K.one()
    if D0:
        cls = _class_of(maps, D0)
        root = _pth_root_class(maps, cls)
        if root is None:
            raise LiftObstructed(cls)
        G = maps.base_group
        E = form_to_ideal(K, G.D, G.element(root))
        target = ideal_multiply(K, ideal_power(K, E, p), ideal_from_divisor(K, divisor_scale(D0, -1)))
        t = find_generator(K, target)
        if t is None:
            raise SearchExhausted("generator of E^p D0^-1", 7)

    b = L.mul(b0, maps.embed(t))
    div_b = divisor_of_element(L, b)
    if any(v % p for v in div_b.values()):
        raise RuntimeError("rescaled div(b) is not p-divisible")
    I = {P: -v // p for P, v in div_b.items()}
    z = DualCocycle.build(b, a, J, I)
    defects = cocycle_defects(maps, z)
    if not all(defects):
        raise RuntimeError(f"lifted quadruple fails its relations: {defects}")
    logger.debug(f"lifted mu_{p} class to a dual cocycle, |supp I| = {len(I)}")
    return z


def massey_value_from(maps: RelativeMaps, y: CharacterModP, J: Divisor, I_prime: Divisor) -> int:
    """y evaluated on [J + N(I')] for p = 3 and on [N(I')] for p > 3."""
    N = maps.norm_divisor(I_prime)
    D = divisor_add(J, N) if maps.p == 3 else N
    if not D:
        return 0
    return y.on_exponents(_class_of(maps, D))
