"""Lattice reduction and short vector enumeration under the T2 form.

Floating point only steers the search; every vector that comes out is an
exact integer combination and is re-verified by the caller.
"""

import logging
from typing import Iterator, List, Sequence, Tuple

import mpmath

from ..errors import PrecisionRetry
from .order import NumberFieldOrder

logger = logging.getLogger("masseytower.numberfield")


def real_images(order: NumberFieldOrder, rows: Sequence[Sequence[int]], prec: int) -> List[List[mpmath.mpf]]:
    """Real coordinates (Re, Im of every embedding) of lattice vectors given in order coordinates."""
    E = order.embeddings(prec)
    out = []
    with mpmath.workprec(prec):
        for row in rows:
            images = [mpmath.mpc(0)] * order.degree
            for k, c in enumerate(row):
                if c:
                    images = [v + int(c) * w for v, w in zip(images, E[k])]
            out.append([z.real for z in images] + [z.imag for z in images])
    return out


def gram_matrix(vectors: Sequence[Sequence[mpmath.mpf]], prec: int) -> List[List[mpmath.mpf]]:
    with mpmath.workprec(prec):
        return [[mpmath.fsum(a * b for a, b in zip(u, v)) for v in vectors] for u in vectors]


def _gram_schmidt(vectors, prec):
    n = len(vectors)
    with mpmath.workprec(prec):
        star = []
        mu = [[mpmath.mpf(0)] * n for _ in range(n)]
        norms = []
        for i in range(n):
            v = list(vectors[i])
            for j in range(i):
                mu[i][j] = mpmath.fsum(a * b for a, b in zip(vectors[i], star[j])) / norms[j]
                v = [a - mu[i][j] * b for a, b in zip(v, star[j])]
            star.append(v)
            norms.append(mpmath.fsum(a * a for a in v))
            if norms[-1] <= 0:
                raise PrecisionRetry(prec)
    return mu, norms


def lll(vectors: Sequence[Sequence[mpmath.mpf]], prec: int, delta: float = 0.99) -> List[List[int]]:
    """LLL reduction; returns the unimodular integer transform U (rows act on the input rows)."""
    n = len(vectors)
    b = [list(v) for v in vectors]
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    k = 1
    steps = 0
    with mpmath.workprec(prec):
        while k < n:
            steps += 1
            if steps > 20000:
                raise PrecisionRetry(prec)
            mu, _ = _gram_schmidt(b, prec)
            for j in range(k - 1, -1, -1):
                r = int(mpmath.nint(mu[k][j]))
                if r:
                    b[k] = [x - r * y for x, y in zip(b[k], b[j])]
                    U[k] = [x - r * y for x, y in zip(U[k], U[j])]
                    mu, _ = _gram_schmidt(b, prec)
            mu, norms = _gram_schmidt(b, prec)
            if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
                k += 1
            else:
                b[k], b[k - 1] = b[k - 1], b[k]
                U[k], U[k - 1] = U[k - 1], U[k]
                k = max(k - 1, 1)
    return U


def reduce_basis(order: NumberFieldOrder, rows: Sequence[Sequence[int]], prec: int) -> List[List[int]]:
    """LLL-reduces integer lattice vectors (order coordinates) under T2."""
    U = lll(real_images(order, rows, prec), prec)
    n = len(rows)
    return [[sum(U[i][k] * int(rows[k][j]) for k in range(n)) for j in range(len(rows[0]))] for i in range(n)]


def _quadratic_decomposition(G, prec):
    n = len(G)
    with mpmath.workprec(prec):
        Q = [[mpmath.mpf(G[i][j]) for j in range(n)] for i in range(n)]
        for i in range(n):
            if Q[i][i] <= 0:
                raise PrecisionRetry(prec)
            for j in range(i + 1, n):
                Q[j][i] = Q[i][j]
                Q[i][j] = Q[i][j] / Q[i][i]
            for k in range(i + 1, n):
                for l in range(k, n):
                    Q[k][l] -= Q[k][i] * Q[i][l]
    return Q


def short_vectors(G: Sequence[Sequence[mpmath.mpf]], bound, prec: int) -> Iterator[Tuple[int, ...]]:
    """Fincke-Pohst: nonzero integer x (up to sign) with x G x^T <= bound."""
    n = len(G)
    Q = _quadratic_decomposition(G, prec)
    x = [0] * n
    with mpmath.workprec(prec):
        slack = mpmath.mpf(bound) * (1 + mpmath.mpf(2) ** (-prec // 2))

        def walk(i: int, remaining):
            center = -mpmath.fsum(Q[i][j] * x[j] for j in range(i + 1, n))
            radius = mpmath.sqrt(max(remaining, 0) / Q[i][i])
            lo = int(mpmath.ceil(center - radius))
            hi = int(mpmath.floor(center + radius))
            for xi in range(lo, hi + 1):
                x[i] = xi
                rest = remaining - Q[i][i] * (xi - center) ** 2
                if rest < 0:
                    continue
                if i == 0:
                    yield tuple(x)
                else:
                    yield from walk(i - 1, rest)
            x[i] = 0

        for v in walk(n - 1, slack):
            if not any(v):
                continue
            first = next(c for c in v if c)
            if first > 0:
                yield v
