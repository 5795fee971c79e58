"""Triple Massey products on explicit finite groups, by brute linear algebra.

Two descriptions are computed independently:

* the defining-system (Dwyer) set  x k_yz + k_xy z  over all k with
  dk_xy = -x cup y and dk_yz = -y cup z;
* the preimage under iota: H^2(F_p) -> H^2(V_y) of x cup w_z - w_x cup z,
  where w_x, w_z run over all lifts of x, z to V_y-valued cocycles.

A set is held as one representative together with an indeterminacy subspace
that always contains B^2, so classes compare by canonical reduction.
"""

import itertools
import logging
import random
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import CupNonzero, IdentityFailed
from ..linalg.matrices import FpSpace, fp_left_kernel
from .cochains import (
    Cochain,
    CohomologyModel,
    TwistedModule,
    coboundary,
    cup,
    half_square,
    include_first,
    pointwise_product,
    scalar_cochain,
    vector_cochain,
)
from .groups import FiniteGroupTable

logger = logging.getLogger("masseytower.oracle")

CharacterLike = Union[Cochain, Sequence[int]]


@dataclass
class MasseySet:
    representative: Tuple[int, ...]
    indeterminacy: FpSpace

    @property
    def p(self) -> int:
        return self.indeterminacy.p

    def canonical(self) -> Tuple[int, ...]:
        return tuple(self.indeterminacy.reduce(self.representative))

    def contains(self, c: Sequence[int]) -> bool:
        diff = [(a - b) % self.p for a, b in zip(c, self.representative)]
        return self.indeterminacy.contains(diff)

    def contains_zero(self) -> bool:
        return self.indeterminacy.contains(self.representative)

    def issubset(self, other: "MasseySet") -> bool:
        return other.contains(self.representative) and all(
            other.indeterminacy.contains(row) for row in self.indeterminacy.rows
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, MasseySet) and self.issubset(other) and other.issubset(self)

    def classes(self, boundaries: FpSpace) -> Iterator[Tuple[int, ...]]:
        """Every element of the set as a canonical class modulo ``boundaries``."""
        p = self.p
        basis = FpSpace(p, boundaries.n, [boundaries.reduce(r) for r in self.indeterminacy.rows]).rows
        base = boundaries.reduce(self.representative)
        for coefficients in itertools.product(range(p), repeat=len(basis)):
            v = list(base)
            for c, row in zip(coefficients, basis):
                if c:
                    v = [(a + c * b) % p for a, b in zip(v, row)]
            yield tuple(boundaries.reduce(v))

    def to_dict(self) -> dict:
        return {"p": self.p, "indeterminacy_dim": self.indeterminacy.dim, "contains_zero": self.contains_zero()}


def as_cochain(G: FiniteGroupTable, x: CharacterLike) -> Cochain:
    if isinstance(x, Cochain):
        return x
    return scalar_cochain(G, x)


def trivial_model(G: FiniteGroupTable) -> CohomologyModel:
    return CohomologyModel(G, TwistedModule(G.p))


def trivialize(model: CohomologyModel, a: Cochain, b: Cochain, label: str) -> Cochain:
    """k with dk = -(a cup b), else CupNonzero."""
    k = model.solve_coboundary(cup(model.G, a, b).scaled(-1))
    if k is None:
        raise CupNonzero(label)
    return k


def dwyer_representative(G: FiniteGroupTable, x: Cochain, z: Cochain, k_xy: Cochain, k_yz: Cochain) -> Cochain:
    return cup(G, x, k_yz) + cup(G, k_xy, z)


def _cup_span(model: CohomologyModel, x: Cochain, z: Cochain) -> List[List[int]]:
    G = model.G
    cocycles = model.cocycles_1()
    return [cup(G, x, h).flat() for h in cocycles] + [cup(G, h, z).flat() for h in cocycles]


def massey_dwyer(
    G: FiniteGroupTable,
    x: CharacterLike,
    y: CharacterLike,
    z: CharacterLike,
    all_trivializations: bool = False,
    model: Optional[CohomologyModel] = None,
) -> MasseySet:
    """<x, y, z> as representative + x cup H^1 + H^1 cup z.

    With ``all_trivializations`` the set is instead assembled by running over
    every pair (k_xy, k_yz), so the two descriptions can be compared.

    Raises:
        CupNonzero: when x cup y or y cup z is not a coboundary.
    """
    x, y, z = (as_cochain(G, c) for c in (x, y, z))
    model = model or trivial_model(G)
    k_xy = trivialize(model, x, y, "x cup y")
    k_yz = trivialize(model, y, z, "y cup z")
    rep = dwyer_representative(G, x, z, k_xy, k_yz)
    if not coboundary(G, rep).is_zero():
        raise IdentityFailed("dwyer representative is not a cocycle")
    if not all_trivializations:
        return MasseySet(tuple(rep.flat()), model.boundaries.extended(_cup_span(model, x, z)))

    cocycles = model.cocycles_1()
    p = G.p
    spread = []
    for a in itertools.product(range(p), repeat=len(cocycles)):
        h = _combination(model, cocycles, a)
        for b in itertools.product(range(p), repeat=len(cocycles)):
            h2 = _combination(model, cocycles, b)
            other = dwyer_representative(G, x, z, k_xy + h, k_yz + h2)
            spread.append([(u - v) % p for u, v in zip(other.flat(), rep.flat())])
    logger.debug(f"enumerated {len(spread)} defining systems on {G.name}")
    return MasseySet(tuple(rep.flat()), model.boundaries.extended(spread))


def _combination(model: CohomologyModel, basis: Sequence[Cochain], coefficients: Sequence[int]) -> Cochain:
    values = np.zeros_like(basis[0].values) if basis else np.zeros((model.G.order, 1), dtype=np.int64)
    for c, h in zip(coefficients, basis):
        values = values + c * h.values
    return Cochain(1, values % model.p, model.module)


def iota_kernel(G: FiniteGroupTable, y: Cochain) -> List[List[int]]:
    """Basis of 2-cocycles c with (c, 0) a coboundary in C^2(V_y)."""
    twisted = CohomologyModel(G, TwistedModule(G.p, y.flat()))
    rows = twisted.d1_rows
    second = [row[1::2] for row in rows]
    combos = fp_left_kernel(second, G.p)
    out = []
    for combo in combos:
        first = [0] * (G.order ** 2)
        for c, row in zip(combo, rows):
            if c:
                first = [(a + c * b) % G.p for a, b in zip(first, row[0::2])]
        out.append(first)
    return out


def twisted_lifts(G: FiniteGroupTable, x: Cochain, y: Cochain, z: Cochain, model: CohomologyModel):
    """(w_x, w_z, k_xy, k_yz) with w_x = (xy - k_xy, x) and w_z = (k_yz, z) cocycles in V_y."""
    k_xy = trivialize(model, x, y, "x cup y")
    k_yz = trivialize(model, y, z, "y cup z")
    V = TwistedModule(G.p, y.flat())
    w_x = vector_cochain(G, pointwise_product(G, x, y) - k_xy, x, V)
    w_z = vector_cochain(G, k_yz, z, V)
    return w_x, w_z, k_xy, k_yz


def massey_via_twist(
    G: FiniteGroupTable,
    x: CharacterLike,
    y: CharacterLike,
    z: CharacterLike,
    model: Optional[CohomologyModel] = None,
) -> MasseySet:
    """All classes c with iota(c) = [x cup w_z - w_x cup z], over every lift pair.

    Raises:
        CupNonzero: when no lift exists.
    """
    x, y, z = (as_cochain(G, c) for c in (x, y, z))
    model = model or trivial_model(G)
    w_x, w_z, _, _ = twisted_lifts(G, x, y, z, model)
    for w, name in ((w_x, "w_x"), (w_z, "w_z")):
        if not coboundary(G, w).is_zero():
            raise IdentityFailed(f"{name} is not a cocycle")
    image = cup(G, x, w_z) - cup(G, w_x, z)
    if any(image.component(1).flat()):
        raise IdentityFailed("x cup w_z - w_x cup z leaves the submodule")
    rep = image.component(0)
    indeterminacy = model.boundaries.extended(_cup_span(model, x, z)).extended(iota_kernel(G, y))
    return MasseySet(tuple(rep.flat()), indeterminacy)


def preimage_identity_check(
    G: FiniteGroupTable,
    x: CharacterLike,
    y: CharacterLike,
    z: CharacterLike,
    k_xy: Optional[Cochain] = None,
    k_yz: Optional[Cochain] = None,
) -> Cochain:
    """Coboundary witness W in C^1(V_y) with dW = iota(Dwyer rep) - (x cup w_z - w_x cup z).

    The lifts are read off the defining system: w_x = (xy - k_xy, x), w_z = (k_yz, z).
    """
    x, y, z = (as_cochain(G, c) for c in (x, y, z))
    model = trivial_model(G)
    k_xy = k_xy if k_xy is not None else trivialize(model, x, y, "x cup y")
    k_yz = k_yz if k_yz is not None else trivialize(model, y, z, "y cup z")
    V = TwistedModule(G.p, y.flat())
    w_x = vector_cochain(G, pointwise_product(G, x, y) - k_xy, x, V)
    w_z = vector_cochain(G, k_yz, z, V)
    if not (coboundary(G, w_x).is_zero() and coboundary(G, w_z).is_zero()):
        raise IdentityFailed("lifts read off the defining system are not cocycles")
    difference = include_first(G, dwyer_representative(G, x, z, k_xy, k_yz), V) - (cup(G, x, w_z) - cup(G, w_x, z))
    witness = CohomologyModel(G, V).solve_coboundary(difference)
    if witness is None:
        raise IdentityFailed("preimage identity")
    return witness


def half_cup_check(
    G: FiniteGroupTable,
    x: CharacterLike,
    y: CharacterLike,
    rng: Optional[random.Random] = None,
    model: Optional[CohomologyModel] = None,
) -> Cochain:
    """Witness W = (-t_y/2, t_y/2) in C^1(V_x) with dW = x cup w_y/2 - w_x cup y.

    w_x = (x(x-1)/2, x) and w_y = (t_y, y) with dt_y = -x cup y; t_y is
    shifted by a random 1-cocycle when ``rng`` is given.

    Raises:
        CupNonzero: when x cup y is not a coboundary.
        IdentityFailed: when the pointwise identity fails.
    """
    x, y = as_cochain(G, x), as_cochain(G, y)
    p = G.p
    if p == 2:
        raise ValueError("half cup identity needs p odd")
    model = model or trivial_model(G)
    t_y = trivialize(model, x, y, "x cup y")
    if rng is not None:
        cocycles = model.cocycles_1()
        t_y = t_y + _combination(model, cocycles, [rng.randrange(p) for _ in cocycles])
    V = TwistedModule(p, x.flat())
    t_x = half_square(G, x)
    w_x = vector_cochain(G, t_x, x, V)
    w_y = vector_cochain(G, t_y, y, V)
    if not (coboundary(G, w_x).is_zero() and coboundary(G, w_y).is_zero()):
        raise IdentityFailed("half cup lifts are not cocycles")
    half = pow(2, -1, p)
    target = cup(G, x, w_y).scaled(half) - cup(G, w_x, y)
    witness = vector_cochain(G, t_y.scaled(-half), t_y.scaled(half), V)
    if not (coboundary(G, witness) - target).is_zero():
        raise IdentityFailed("half cup")
    return witness


def bockstein(G: FiniteGroupTable, x: CharacterLike) -> Cochain:
    """(x~(g) + x~(h) - x~(gh)) / p with x~ the lift to [0, p)."""
    x = as_cochain(G, x)
    p = G.p
    lift = x.values[:, 0] % p
    g = np.repeat(np.arange(G.order), G.order)
    h = np.tile(np.arange(G.order), G.order)
    carry = lift[g] + lift[h] - lift[G.table[g, h]]
    return Cochain(2, (carry // p).reshape(-1, 1) % p, TwistedModule(p))


def bockstein_sign(G: FiniteGroupTable, x: CharacterLike) -> int:
    """s in {1, -1} with s beta(x) in <x, x, x>, or 0 when neither lies in it."""
    x = as_cochain(G, x)
    triple = massey_dwyer(G, x, x, x)
    beta = bockstein(G, x)
    for s in (-1, 1):
        if triple.contains(beta.scaled(s).flat()):
            return s
    return 0


def anticommutator_witness(G: FiniteGroupTable, x: CharacterLike, y: CharacterLike) -> Cochain:
    """-xy pointwise, whose coboundary is x cup y + y cup x."""
    x, y = as_cochain(G, x), as_cochain(G, y)
    k = pointwise_product(G, x, y).scaled(-1)
    if not (coboundary(G, k) - (cup(G, x, y) + cup(G, y, x))).is_zero():
        raise IdentityFailed("graded commutativity")
    return k


def cup_class_is_zero(G: FiniteGroupTable, x: CharacterLike, y: CharacterLike, model: Optional[CohomologyModel] = None) -> bool:
    x, y = as_cochain(G, x), as_cochain(G, y)
    model = model or trivial_model(G)
    return model.is_coboundary(cup(G, x, y))


def left_cup_vanishes(G: FiniteGroupTable, y: CharacterLike, model: Optional[CohomologyModel] = None) -> bool:
    """Whether y cup (-) is zero on H^1."""
    y = as_cochain(G, y)
    model = model or trivial_model(G)
    return all(model.is_coboundary(cup(G, y, h)) for h in model.cocycles_1())


def containment_gap(dwyer: MasseySet, twisted: MasseySet) -> int:
    """dim of the twisted indeterminacy over the Dwyer one; 0 means equal sets."""
    if not dwyer.issubset(twisted):
        raise IdentityFailed("Dwyer set escapes the twisted preimage")
    return twisted.indeterminacy.dim - dwyer.indeterminacy.dim

