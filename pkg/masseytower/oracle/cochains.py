"""Inhomogeneous cochains of a finite group with values in F_p or in V_y.

An n-cochain is an integer array of shape (order^n, dim): row g_1 * order^(n-1) + ... + g_n
holds the value at (g_1, ..., g_n). V_y is F_p^2 with g acting by
[[1, y(g)], [0, 1]] on column vectors; F_p is the trivial module of dim 1.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from ..linalg.matrices import FpSpace, fp_left_kernel
from .groups import FiniteGroupTable

logger = logging.getLogger("masseytower.oracle")


@dataclass
class TwistedModule:
    """F_p (twist None) or V_y (twist = values of y)."""

    p: int
    twist: Optional[Sequence[int]] = None

    @property
    def dim(self) -> int:
        return 1 if self.twist is None else 2

    def act(self, G: FiniteGroupTable, g: np.ndarray, values: np.ndarray) -> np.ndarray:
        """g . v row by row; g and values have matching first axes."""
        if self.twist is None:
            return values
        y = np.asarray(self.twist, dtype=np.int64)[g]
        out = values.copy()
        out[:, 0] = (values[:, 0] + y * values[:, 1]) % self.p
        return out

    def matrix(self, g: int) -> List[List[int]]:
        if self.twist is None:
            return [[1]]
        return [[1, int(self.twist[g]) % self.p], [0, 1]]


@dataclass
class Cochain:
    degree: int
    values: np.ndarray
    module: TwistedModule

    def __add__(self, other: "Cochain") -> "Cochain":
        return Cochain(self.degree, (self.values + other.values) % self.module.p, self.module)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return Cochain(self.degree, (self.values - other.values) % self.module.p, self.module)

    def scaled(self, c: int) -> "Cochain":
        return Cochain(self.degree, (self.values * c) % self.module.p, self.module)

    def is_zero(self) -> bool:
        return not np.any(self.values % self.module.p)

    def flat(self) -> List[int]:
        return [int(v) for v in (self.values % self.module.p).reshape(-1)]

    def component(self, k: int) -> "Cochain":
        return Cochain(self.degree, self.values[:, k:k + 1] % self.module.p, TwistedModule(self.module.p))


def scalar_cochain(G: FiniteGroupTable, values: Sequence[int], degree: int = 1) -> Cochain:
    arr = np.asarray(values, dtype=np.int64).reshape(G.order ** degree, 1) % G.p
    return Cochain(degree, arr, TwistedModule(G.p))


def zero_cochain(G: FiniteGroupTable, degree: int, module: TwistedModule) -> Cochain:
    return Cochain(degree, np.zeros((G.order ** degree, module.dim), dtype=np.int64), module)


def vector_cochain(G: FiniteGroupTable, first: Cochain, second: Cochain, module: TwistedModule) -> Cochain:
    """(first, second) as a V-valued cochain."""
    return Cochain(first.degree, np.concatenate([first.values, second.values], axis=1) % G.p, module)


def include_first(G: FiniteGroupTable, c: Cochain, module: TwistedModule) -> Cochain:
    """F_p -> V, v -> (v, 0)."""
    return vector_cochain(G, c, zero_cochain(G, c.degree, TwistedModule(G.p)), module)


def _grid(G: FiniteGroupTable, n: int) -> List[np.ndarray]:
    N = G.order
    return [a.reshape(-1) for a in np.meshgrid(*([np.arange(N)] * n), indexing="ij")]


def _index(G: FiniteGroupTable, args: Sequence[np.ndarray]) -> np.ndarray:
    out = np.zeros_like(args[0])
    for a in args:
        out = out * G.order + a
    return out


def coboundary(G: FiniteGroupTable, c: Cochain) -> Cochain:
    """(dc)(g_1..g_{n+1}) = g_1 c(g_2..) + sum_i (-1)^i c(.., g_i g_{i+1}, ..) + (-1)^{n+1} c(g_1..g_n)."""
    n = c.degree
    if n > 2:
        raise ValueError("coboundary is implemented for degrees 0, 1 and 2")
    p = c.module.p
    args = _grid(G, n + 1)
    if n == 0:
        v = np.repeat(c.values[:1], G.order, axis=0)
        out = c.module.act(G, args[0], v) - v
        return Cochain(1, out % p, c.module)
    out = c.module.act(G, args[0], c.values[_index(G, args[1:])])
    for i in range(n):
        merged = list(args[:i]) + [G.table[args[i], args[i + 1]]] + list(args[i + 2:])
        out = out + (-1) ** (i + 1) * c.values[_index(G, merged)]
    out = out + (-1) ** (n + 1) * c.values[_index(G, args[:n])]
    return Cochain(n + 1, out % p, c.module)


def cup(G: FiniteGroupTable, a: Cochain, b: Cochain) -> Cochain:
    """(a cup b)(g, h) = a(g) (g . b(h)) for 1-cochains, one of them scalar."""
    if a.degree != 1 or b.degree != 1:
        raise ValueError("cup is implemented for pairs of 1-cochains")
    p = G.p
    g, h = _grid(G, 2)
    if a.module.dim == 1:
        acted = b.module.act(G, g, b.values[h])
        return Cochain(2, (a.values[g] * acted) % p, b.module)
    if b.module.dim == 1:
        return Cochain(2, (a.values[g] * b.values[h]) % p, a.module)
    raise ValueError("one factor of the cup product must be scalar")


def pointwise_product(G: FiniteGroupTable, a: Cochain, b: Cochain) -> Cochain:
    """g -> a(g) b(g) for scalar 1-cochains."""
    return Cochain(1, (a.values * b.values) % G.p, TwistedModule(G.p))


def half_square(G: FiniteGroupTable, x: Cochain) -> Cochain:
    """t_x = x(x-1)/2, with d t_x = -x cup x."""
    p = G.p
    inv2 = pow(2, -1, p)
    return Cochain(1, (x.values * (x.values - 1) * inv2) % p, TwistedModule(p))


class CohomologyModel:
    """Dense linear algebra for H^1 and H^2 of one module."""

    def __init__(self, G: FiniteGroupTable, module: TwistedModule):
        self.G = G
        self.module = module
        self.p = G.p
        dim = module.dim
        self.c1_dim = G.order * dim
        self.c2_dim = G.order ** 2 * dim
        self.d1_rows = [coboundary(G, self._basis(1, i)).flat() for i in range(self.c1_dim)]
        self.boundaries = FpSpace(self.p, self.c2_dim, self.d1_rows)
        d0_rows = [coboundary(G, self._basis(0, i)).flat() for i in range(dim)]
        self.b1 = FpSpace(self.p, self.c1_dim, d0_rows)

    def _basis(self, degree: int, i: int) -> Cochain:
        c = zero_cochain(self.G, degree, self.module)
        c.values.reshape(-1)[i] = 1
        return c

    def from_flat(self, degree: int, flat: Sequence[int]) -> Cochain:
        arr = np.asarray(flat, dtype=np.int64).reshape(self.G.order ** degree, self.module.dim) % self.p
        return Cochain(degree, arr, self.module)

    def cocycles_1(self) -> List[Cochain]:
        """Basis of Z^1."""
        kernel = fp_left_kernel(self.d1_rows, self.p)
        return [self.from_flat(1, v) for v in kernel]

    def solve_coboundary(self, target: Cochain) -> Optional[Cochain]:
        """Some 1-cochain k with dk = target, or None."""
        rows = self.d1_rows + [[(-v) % self.p for v in target.flat()]]
        for v in fp_left_kernel(rows, self.p):
            last = v[-1] % self.p
            if last:
                inv = pow(last, -1, self.p)
                return self.from_flat(1, [c * inv % self.p for c in v[:-1]])
        return None

    def is_coboundary(self, c: Cochain) -> bool:
        return self.boundaries.contains(c.flat())

    def reduce(self, c: Cochain) -> tuple:
        """Canonical representative of the class of a 2-cocycle."""
        return tuple(self.boundaries.reduce(c.flat()))
