"""Small explicit p-groups by multiplication table."""

import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

logger = logging.getLogger("masseytower.oracle")

GROUP_NAMES = ("Z3xZ3", "heis27", "Z5xZ5", "Z3", "Z5", "Z9")


@dataclass
class FiniteGroupTable:
    """Elements are 0..order-1; table[g][h] is the index of gh.

    ``labels`` are the tuples the group was built from and ``characters`` the
    standard homomorphisms to Z/p, as value lists indexed by element.
    """

    name: str
    p: int
    order: int
    table: np.ndarray
    identity: int
    labels: List[Tuple[int, ...]]
    characters: Dict[str, List[int]] = field(default_factory=dict)

    def mul(self, g: int, h: int) -> int:
        return int(self.table[g, h])

    def inverse(self, g: int) -> int:
        row = self.table[g]
        return int(np.nonzero(row == self.identity)[0][0])

    def to_dict(self) -> dict:
        return {"name": self.name, "p": self.p, "order": self.order}


def _from_law(name: str, p: int, labels: List[Tuple[int, ...]], law: Callable) -> FiniteGroupTable:
    index = {g: i for i, g in enumerate(labels)}
    n = len(labels)
    table = np.zeros((n, n), dtype=np.int64)
    for i, g in enumerate(labels):
        for j, h in enumerate(labels):
            table[i, j] = index[law(g, h)]
    identity = index[tuple(0 for _ in labels[0])]
    return FiniteGroupTable(name, p, n, table, identity, labels)


def cyclic_group(p: int, power: int = 1) -> FiniteGroupTable:
    """Z/p^power with x the reduction mod p."""
    n = p ** power
    G = _from_law(f"Z{n}", p, [(a,) for a in range(n)], lambda g, h: ((g[0] + h[0]) % n,))
    G.characters = {"x": [g[0] % p for g in G.labels]}
    return G


def elementary_abelian(p: int) -> FiniteGroupTable:
    labels = list(itertools.product(range(p), repeat=2))
    G = _from_law(f"Z{p}xZ{p}", p, labels, lambda g, h: ((g[0] + h[0]) % p, (g[1] + h[1]) % p))
    G.characters = {"x": [g[0] for g in labels], "y": [g[1] for g in labels]}
    return G


def heisenberg_group(p: int) -> FiniteGroupTable:
    """Upper unitriangular 3x3 matrices over F_p as (a, b, c), (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')."""
    labels = list(itertools.product(range(p), repeat=3))

    def law(g, h):
        return ((g[0] + h[0]) % p, (g[1] + h[1]) % p, (g[2] + h[2] + g[0] * h[1]) % p)

    G = _from_law(f"heis{p ** 3}", p, labels, law)
    G.characters = {"x": [g[0] for g in labels], "y": [g[1] for g in labels]}
    return G


def named_group(name: str) -> FiniteGroupTable:
    builders = {
        "Z3xZ3": lambda: elementary_abelian(3),
        "Z5xZ5": lambda: elementary_abelian(5),
        "heis27": lambda: heisenberg_group(3),
        "Z3": lambda: cyclic_group(3),
        "Z5": lambda: cyclic_group(5),
        "Z9": lambda: cyclic_group(3, 2),
    }
    if name not in builders:
        raise ValueError(f"unknown group {name}; choose from {', '.join(GROUP_NAMES)}")
    return builders[name]()


def check_associativity(G: FiniteGroupTable, samples: int = 1000, rng: Optional[random.Random] = None) -> bool:
    rng = rng or random.Random(0)
    for _ in range(samples):
        g, h, k = (rng.randrange(G.order) for _ in range(3))
        if G.mul(G.mul(g, h), k) != G.mul(g, G.mul(h, k)):
            return False
    return True


def has_inverses(G: FiniteGroupTable) -> bool:
    return all((G.table[g] == G.identity).sum() == 1 for g in range(G.order))


def is_homomorphism(G: FiniteGroupTable, values: Sequence[int]) -> bool:
    p = G.p
    for g in range(G.order):
        for h in range(G.order):
            if (values[g] + values[h] - values[G.mul(g, h)]) % p:
                return False
    return True
