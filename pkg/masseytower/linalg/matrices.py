"""Exact integer, rational and F_p linear algebra.

Integer matrices are numpy arrays of dtype=object so entries stay Python ints.
Vectors are rows throughout: a linear map is applied as ``x @ M``.
"""

import math
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

IntMatrix = np.ndarray


def int_matrix(rows: Iterable[Sequence[int]], ncols: Optional[int] = None) -> IntMatrix:
    """Builds an object-dtype integer matrix; ``ncols`` fixes the shape of an empty one."""
    rows = [[int(v) for v in row] for row in rows]
    if not rows:
        return np.zeros((0, ncols or 0), dtype=object)
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise ValueError("ragged matrix rows")
    out = np.empty((len(rows), width), dtype=object)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            out[i, j] = v
    return out


def identity(n: int) -> IntMatrix:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def matmul(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    """Exact product; numpy's ``@`` on object arrays is exact but rejects empty shapes."""
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    if A.shape[0] == 0 or B.shape[1] == 0 or A.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=object)
    return np.dot(A, B)


def smith_normal_form(M: IntMatrix) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form with transforms.

    Args:
        M: an m x n integer matrix.

    Returns:
        (S, U, V) with S = U @ M @ V, S diagonal with non-negative entries
        d_1 | d_2 | ..., U and V unimodular.
    """
    A = np.array(M, dtype=object).copy()
    m, n = A.shape
    U = identity(m)
    V = identity(n)
    t = 0
    while t < min(m, n):
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i, j] != 0 and (pivot is None or abs(A[i, j]) < abs(A[pivot])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        if i != t:
            A[[t, i]] = A[[i, t]]
            U[[t, i]] = U[[i, t]]
        if j != t:
            A[:, [t, j]] = A[:, [j, t]]
            V[:, [t, j]] = V[:, [j, t]]

        clean = True
        for i in range(t + 1, m):
            q = A[i, t] // A[t, t]
            if q:
                A[i] -= q * A[t]
                U[i] -= q * U[t]
            if A[i, t] != 0:
                clean = False
        for j in range(t + 1, n):
            q = A[t, j] // A[t, t]
            if q:
                A[:, j] -= q * A[:, t]
                V[:, j] -= q * V[:, t]
            if A[t, j] != 0:
                clean = False
        if not clean:
            continue

        offender = next(
            (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i, j] % A[t, t] != 0),
            None,
        )
        if offender is not None:
            A[t] += A[offender]
            U[t] += U[offender]
            continue

        if A[t, t] < 0:
            A[t] = -A[t]
            U[t] = -U[t]
        t += 1
    return A, U, V


def smith_diagonal(M: IntMatrix) -> List[int]:
    S, _, _ = smith_normal_form(M)
    return [int(S[i, i]) for i in range(min(S.shape))]


def hermite_normal_form(rows: IntMatrix, modulus: Optional[int] = None) -> IntMatrix:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    The result is upper echelon with positive pivots and entries above each
    pivot reduced into [0, pivot). Zero rows are dropped. When ``modulus`` is
    given the lattice is known to contain modulus * Z^n, which keeps entries
    small.
    """
    A = np.array(rows, dtype=object)
    if A.ndim != 2:
        raise ValueError("hermite_normal_form expects a 2-d array")
    ncols = A.shape[1]
    work = [A[i].copy() for i in range(A.shape[0])]
    if modulus is not None:
        modulus = abs(int(modulus))
    result: List[np.ndarray] = []
    pivots: List[int] = []
    for col in range(ncols):
        if modulus:
            # modulus * e_col joins only now: earlier columns' reductions
            # would have zeroed its diagonal
            row = np.zeros(ncols, dtype=object)
            row[col] = modulus
            work.append(row)
        while True:
            live = [r for r in work if r[col] != 0]
            if len(live) <= 1:
                break
            piv = min(live, key=lambda r: abs(r[col]))
            for r in live:
                if r is not piv:
                    r -= (r[col] // piv[col]) * piv
        chosen = next((r for r in work if r[col] != 0), None)
        if chosen is None:
            continue
        work = [r for r in work if r is not chosen]
        if chosen[col] < 0:
            chosen = -chosen
        if modulus:
            for r in work:
                for j in range(col + 1, ncols):
                    r[j] %= modulus
        result.append(chosen)
        pivots.append(col)
        work = [r for r in work if any(v != 0 for v in r)]
    for k in range(len(result)):
        pc = pivots[k]
        for i in range(k):
            q = result[i][pc] // result[k][pc]
            if q:
                result[i] = result[i] - q * result[k]
    if not result:
        return np.zeros((0, ncols), dtype=object)
    return np.array(result, dtype=object)


def lower_hermite_normal_form(rows: IntMatrix) -> IntMatrix:
    """Lower-triangular variant: row k has zeros past column k."""
    A = np.array(rows, dtype=object)
    H = hermite_normal_form(A[:, ::-1])
    return np.ascontiguousarray(H[::-1, ::-1])


def integer_determinant(M: IntMatrix) -> int:
    """Bareiss fraction-free elimination."""
    A = [[int(v) for v in row] for row in np.array(M, dtype=object)]
    n = len(A)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


# rational matrices are lists of lists of Fraction

def rational_inverse(M: Sequence[Sequence]) -> List[List[Fraction]]:
    n = len(M)
    A = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [v * inv for v in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return [row[n:] for row in A]


def rational_vecmat(x: Sequence, M: Sequence[Sequence]) -> List[Fraction]:
    """Row vector times matrix over Q."""
    if not M:
        return []
    return [sum((Fraction(x[i]) * M[i][j] for i in range(len(M))), Fraction(0)) for j in range(len(M[0]))]



def common_denominator(values: Iterable) -> int:
    d = 1
    for v in values:
        d = math.lcm(d, Fraction(v).denominator)
    return d


def solve_integer_system(rows: IntMatrix, target: Sequence[int]) -> Optional[List[int]]:
    """Finds an integer vector z with z @ rows == target, or None."""
    A = np.array(rows, dtype=object)
    m, n = A.shape
    if m == 0:
        return [] if all(v == 0 for v in target) else None
    S, U, V = smith_normal_form(A)
    c = matmul(np.array([list(target)], dtype=object), V)[0]
    w = [0] * m
    for i in range(n):
        d = S[i, i] if i < m else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d != 0:
                return None
            w[i] = c[i] // d
    z = matmul(np.array([w], dtype=object), U)[0]
    return [int(v) for v in z]


# F_p linear algebra on plain lists

def fp_row_reduce(M, p: int) -> Tuple[List[List[int]], List[int]]:
    """Reduced row echelon form mod p. Returns (nonzero rows, pivot columns)."""
    A = [[int(v) % p for v in row] for row in M]
    if not A:
        return [], []
    ncols = len(A[0])
    rows: List[List[int]] = []
    pivots: List[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][col]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][col], -1, p)
        A[r] = [v * inv % p for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][col]:
                f = A[i][col]
                A[i] = [(a - f * b) % p for a, b in zip(A[i], A[r])]
        pivots.append(col)
        r += 1
        if r == len(A):
            break
    rows = A[:r]
    return rows, pivots


def fp_rank(M, p: int) -> int:
    """Rank of M over F_p."""
    return len(fp_row_reduce(M, p)[0])


def fp_right_kernel(M, p: int, ncols: Optional[int] = None) -> List[List[int]]:
    """Basis of {v : M v = 0 mod p}."""
    rows, pivots = fp_row_reduce(M, p)
    if ncols is None:
        ncols = len(M[0]) if len(M) else 0
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(rows, pivots):
            v[pc] = (-row[f]) % p
        basis.append(v)
    return basis


def fp_left_kernel(M, p: int) -> List[List[int]]:
    """Basis of {x : x M = 0 mod p}."""
    M = [list(row) for row in M]
    nrows = len(M)
    if nrows == 0:
        return []
    transposed = [[M[i][j] for i in range(nrows)] for j in range(len(M[0]))]
    return fp_right_kernel(transposed, p, ncols=nrows)


def fp_vecmat(x: Sequence[int], M, p: int) -> List[int]:
    ncols = len(M[0]) if len(M) else 0
    out = [0] * ncols
    for xi, row in zip(x, M):
        if xi % p:
            for j in range(ncols):
                out[j] += xi * row[j]
    return [v % p for v in out]


def fp_matmul(A, B, p: int) -> List[List[int]]:
    return [fp_vecmat(row, B, p) for row in A]


class FpSpace:
    """A subspace of F_p^n held in reduced row echelon form."""

    def __init__(self, p: int, n: int, vectors: Iterable[Sequence[int]] = ()):
        self.p = p
        self.n = n
        vectors = [list(v) for v in vectors]
        self.rows, self.pivots = fp_row_reduce(vectors, p) if vectors else ([], [])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: Sequence[int]) -> List[int]:
        """Canonical residue of v modulo the space; linear in v."""
        out = [int(x) % self.p for x in v]
        for row, pc in zip(self.rows, self.pivots):
            f = out[pc]
            if f:
                out = [(a - f * b) % self.p for a, b in zip(out, row)]
        return out

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def extended(self, vectors: Iterable[Sequence[int]]) -> "FpSpace":
        return FpSpace(self.p, self.n, list(self.rows) + [list(v) for v in vectors])

    def __eq__(self, other) -> bool:
        return isinstance(other, FpSpace) and (self.p, self.n, self.rows) == (other.p, other.n, other.rows)

    def __hash__(self) -> int:
        return hash((self.p, self.n, tuple(map(tuple, self.rows))))

    def __repr__(self) -> str:
        return f"FpSpace(p={self.p}, n={self.n}, dim={self.dim})"
