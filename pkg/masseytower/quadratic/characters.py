"""Characters Cl(K) -> Z/p, stored by their values on the group generators."""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from ..errors import FormWrongDiscriminant
from .classgroup import ClassGroupQF, class_log
from .forms import QuadForm


@dataclass(frozen=True)
class CharacterModP:
    p: int
    values_on_generators: Tuple[int, ...]

    def is_zero(self) -> bool:
        return not any(v % self.p for v in self.values_on_generators)

    def scaled(self, s: int) -> "CharacterModP":
        return CharacterModP(self.p, tuple(s * v % self.p for v in self.values_on_generators))

    def __add__(self, other: "CharacterModP") -> "CharacterModP":
        return CharacterModP(
            self.p, tuple((a + b) % self.p for a, b in zip(self.values_on_generators, other.values_on_generators))
        )

    def on_exponents(self, exponents: Sequence[int]) -> int:
        return sum(int(e) * v for e, v in zip(exponents, self.values_on_generators)) % self.p

    def to_dict(self) -> dict:
        return {"p": self.p, "values": list(self.values_on_generators)}


def make_character(G: ClassGroupQF, p: int, values: Sequence[int]) -> CharacterModP:
    """Validates that the values define a homomorphism on Cl(K).

    A generator whose order is prime to p must go to 0.
    """
    values = tuple(int(v) % p for v in values)
    if len(values) != len(G.invariant_factors):
        raise ValueError(f"expected {len(G.invariant_factors)} values, got {len(values)}")
    for v, d in zip(values, G.invariant_factors):
        if d % p and v:
            raise ValueError(f"generator of order {d} cannot map nontrivially to Z/{p}")
    return CharacterModP(p, values)


def evaluate(G: ClassGroupQF, x: CharacterModP, f: QuadForm) -> int:
    if f.discriminant != G.D:
        raise FormWrongDiscriminant(f, G.D)
    return x.on_exponents(class_log(G, f))


def character_basis(G: ClassGroupQF, p: int) -> List[CharacterModP]:
    """Basis of Hom(Cl(K), Z/p) dual to the generators of order divisible by p."""
    r = len(G.invariant_factors)
    basis = []
    for i, d in enumerate(G.invariant_factors):
        if d % p == 0:
            basis.append(CharacterModP(p, tuple(int(j == i) for j in range(r))))
    return basis


def p_torsion_generators(G: ClassGroupQF, p: int) -> List[QuadForm]:
    """g_i^(d_i/p) for every generator of order divisible by p: a basis of Cl(K)[p]."""
    return [g ** (d // p) for g, d in zip(G.generators, G.invariant_factors) if d % p == 0]


def bockstein_vanishes(G: ClassGroupQF, x: CharacterModP) -> bool:
    """True when x lifts to a character with values in Z/p^2.

    A generator whose invariant factor has p-adic valuation exactly 1 can only
    map into p Z/p^2, so x must vanish there.
    """
    p = x.p
    for v, d in zip(x.values_on_generators, G.invariant_factors):
        if v % p and d % (p * p):
            return False
    return True
