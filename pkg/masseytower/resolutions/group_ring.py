"""Z[G_x x G_y] = Z[T_x, T_y]/(T_x^p - 1, T_y^p - 1) and its block quotients."""

import random
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np


class BlockKind(Enum):
    """Which of Z, Z[G_y], Z[G_x], Z[G_x x G_y] a summand is."""

    Z = "Z"
    ZGY = "Z[G_y]"
    ZGX = "Z[G_x]"
    ZGXY = "Z[G_x x G_y]"

    @property
    def has_x(self) -> bool:
        return self in (BlockKind.ZGX, BlockKind.ZGXY)

    @property
    def has_y(self) -> bool:
        return self in (BlockKind.ZGY, BlockKind.ZGXY)

    def rank(self, p: int) -> int:
        return (p if self.has_x else 1) * (p if self.has_y else 1)


class GroupRingElement:
    """coefficients[i, j] is the coefficient of T_x^i T_y^j."""

    __slots__ = ("p", "coefficients")

    def __init__(self, p: int, coefficients: Optional[np.ndarray] = None):
        self.p = p
        if coefficients is None:
            coefficients = np.zeros((p, p), dtype=np.int64)
        self.coefficients = np.asarray(coefficients, dtype=np.int64).reshape(p, p)

    @classmethod
    def monomial(cls, p: int, i: int = 0, j: int = 0, c: int = 1) -> "GroupRingElement":
        out = cls(p)
        out.coefficients[i % p, j % p] = c
        return out

    @classmethod
    def scalar(cls, p: int, c: int) -> "GroupRingElement":
        return cls.monomial(p, 0, 0, c)

    def __add__(self, other) -> "GroupRingElement":
        other = _coerce(self.p, other)
        return GroupRingElement(self.p, self.coefficients + other.coefficients)

    __radd__ = __add__

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement(self.p, -self.coefficients)

    def __sub__(self, other) -> "GroupRingElement":
        return self + (-_coerce(self.p, other))

    def __rsub__(self, other) -> "GroupRingElement":
        return _coerce(self.p, other) - self

    def __mul__(self, other) -> "GroupRingElement":
        other = _coerce(self.p, other)
        a, b = self.coefficients, other.coefficients
        if np.count_nonzero(a) > np.count_nonzero(b):
            a, b = b, a
        out = np.zeros((self.p, self.p), dtype=np.int64)
        for i, j in zip(*np.nonzero(a)):
            out += a[i, j] * np.roll(np.roll(b, i, axis=0), j, axis=1)
        return GroupRingElement(self.p, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "GroupRingElement":
        out = GroupRingElement.scalar(self.p, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = GroupRingElement.scalar(self.p, other)
        return isinstance(other, GroupRingElement) and np.array_equal(self.coefficients, other.coefficients)

    def __hash__(self) -> int:
        return hash(self.coefficients.tobytes())

    def is_zero(self) -> bool:
        return not self.coefficients.any()

    def augment_x(self) -> "GroupRingElement":
        """T_x -> 1, kept as an element supported on T_x^0."""
        out = np.zeros_like(self.coefficients)
        out[0, :] = self.coefficients.sum(axis=0)
        return GroupRingElement(self.p, out)

    def augment_y(self) -> "GroupRingElement":
        out = np.zeros_like(self.coefficients)
        out[:, 0] = self.coefficients.sum(axis=1)
        return GroupRingElement(self.p, out)

    def augmentation(self) -> int:
        return int(self.coefficients.sum())

    def project(self, kind: BlockKind) -> "GroupRingElement":
        out = self
        if not kind.has_x:
            out = out.augment_x()
        if not kind.has_y:
            out = out.augment_y()
        return out

    def to_list(self) -> List[List[int]]:
        return self.coefficients.tolist()

    def __repr__(self) -> str:
        terms = []
        for i, j in zip(*np.nonzero(self.coefficients)):
            terms.append(f"{self.coefficients[i, j]}*Tx^{i}*Ty^{j}")
        return " + ".join(terms) or "0"


def _coerce(p: int, value) -> GroupRingElement:
    if isinstance(value, GroupRingElement):
        return value
    return GroupRingElement.scalar(p, int(value))


@dataclass(frozen=True)
class Generators:
    """T_x, T_y, Delta, Gamma and the usual combinations for one p."""

    p: int

    @property
    def Tx(self) -> GroupRingElement:
        return GroupRingElement.monomial(self.p, 1, 0)

    @property
    def Ty(self) -> GroupRingElement:
        return GroupRingElement.monomial(self.p, 0, 1)

    @property
    def one(self) -> GroupRingElement:
        return GroupRingElement.scalar(self.p, 1)

    @property
    def zero(self) -> GroupRingElement:
        return GroupRingElement(self.p)

    @property
    def Dx(self) -> GroupRingElement:
        return _sum_powers(self.p, axis=0, weight=lambda n: 1)

    @property
    def Dy(self) -> GroupRingElement:
        return _sum_powers(self.p, axis=1, weight=lambda n: 1)

    @property
    def Gx(self) -> GroupRingElement:
        return _sum_powers(self.p, axis=0, weight=lambda n: -n)

    @property
    def Gy(self) -> GroupRingElement:
        return _sum_powers(self.p, axis=1, weight=lambda n: -n)

    @property
    def ux(self) -> GroupRingElement:
        """1 - T_x."""
        return self.one - self.Tx

    @property
    def uy(self) -> GroupRingElement:
        return self.one - self.Ty


def _sum_powers(p: int, axis: int, weight) -> GroupRingElement:
    out = GroupRingElement(p)
    for n in range(p):
        if axis == 0:
            out.coefficients[n, 0] = weight(n)
        else:
            out.coefficients[0, n] = weight(n)
    return out


def basis(p: int, kind: BlockKind) -> List[GroupRingElement]:
    xs = range(p) if kind.has_x else (0,)
    ys = range(p) if kind.has_y else (0,)
    return [GroupRingElement.monomial(p, i, j) for i in xs for j in ys]


def random_element(p: int, rng: random.Random, bound: int = 5) -> GroupRingElement:
    values = np.array([[rng.randint(-bound, bound) for _ in range(p)] for _ in range(p)], dtype=np.int64)
    return GroupRingElement(p, values)


class Quotient(Enum):
    """F_p[G_y]/I_y^2 (dim 2) and F_p[G_x x G_y]/(I_x^2 + I_y^2) (dim 4)."""

    Y = "F_p[G_y]/I_y^2"
    XY = "F_p[G_x x G_y]/(I_x^2 + I_y^2)"

    @property
    def dim(self) -> int:
        return 2 if self is Quotient.Y else 4

    def reduce(self, f: GroupRingElement) -> Tuple[int, ...]:
        """Coordinates in the basis 1, (T_y - 1) or 1, (T_x - 1), (T_y - 1), (T_x - 1)(T_y - 1).

        With T = 1 + u and u^2 = 0, T^n = 1 + n u.
        """
        p = f.p
        a = f.coefficients
        i = np.arange(p).reshape(-1, 1)
        j = np.arange(p).reshape(1, -1)
        if self is Quotient.Y:
            return (int(a.sum()) % p, int((j * a).sum()) % p)
        return (
            int(a.sum()) % p,
            int((i * a).sum()) % p,
            int((j * a).sum()) % p,
            int((i * j * a).sum()) % p,
        )


def ring_axioms_hold(p: int, rng: random.Random, samples: int = 20) -> bool:
    """Commutativity, associativity and multiplicativity of the augmentation on random triples."""
    for _ in range(samples):
        a, b, c = (random_element(p, rng) for _ in range(3))
        if a * b != b * a or (a * b) * c != a * (b * c):
            return False
        if (a * b).augmentation() != a.augmentation() * b.augmentation():
            return False
        if (a * b).augment_x() != a.augment_x() * b.augment_x():
            return False
    return True
