"""Exact linear algebra and polynomial root counting."""

import random
from fractions import Fraction

from masseytower.linalg.matrices import (
    FpSpace,
    fp_left_kernel,
    fp_rank,
    fp_right_kernel,
    fp_vecmat,
    hermite_normal_form,
    int_matrix,
    matmul,
    smith_diagonal,
    smith_normal_form,
    solve_integer_system,
)
from masseytower.linalg.polynomials import RationalPolynomial, count_roots_open_unit_interval, roots_mod


def test_smith_normal_form_known_diagonal():
    M = int_matrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert smith_diagonal(M) == [2, 6, 12]


def test_smith_transforms_reproduce_diagonal():
    rng = random.Random(7)
    for _ in range(10):
        M = int_matrix([[rng.randint(-9, 9) for _ in range(4)] for _ in range(3)])
        S, U, V = smith_normal_form(M)
        assert (matmul(matmul(U, M), V) == S).all()
        d = [S[i, i] for i in range(3)]
        for a, b in zip(d, d[1:]):
            assert b == 0 or (a != 0 and b % a == 0)


def test_hermite_normal_form_is_canonical():
    rows = int_matrix([[4, 6], [2, 0]])
    swapped = int_matrix([[2, 0], [4, 6]])
    assert (hermite_normal_form(rows) == hermite_normal_form(swapped)).all()


def test_hermite_normal_form_modulus_keeps_full_rank():
    """A pivot equal to the modulus must survive the reduction."""
    assert hermite_normal_form(int_matrix([[1, 0], [0, 5]]), modulus=5).tolist() == [[1, 0], [0, 5]]
    assert hermite_normal_form(int_matrix([[1, 2], [0, 5]]), modulus=5).tolist() == [[1, 2], [0, 5]]
    assert hermite_normal_form(int_matrix([[1, 26], [0, 27]]), modulus=27).tolist() == [[1, 26], [0, 27]]
    rng = random.Random(6)
    for _ in range(30):
        rows = int_matrix([[rng.randint(-20, 20) for _ in range(3)] for _ in range(3)] + [[12, 0, 0], [0, 12, 0], [0, 0, 12]])
        assert (hermite_normal_form(rows, modulus=12) == hermite_normal_form(rows)).all()


def test_solve_integer_system():
    rows = int_matrix([[2, 0], [0, 3]])
    assert solve_integer_system(rows, [4, 9]) == [2, 3]
    assert solve_integer_system(rows, [1, 0]) is None


def test_fp_kernels():
    M = [[1, 2, 0], [2, 4, 0]]
    assert fp_rank(M, 5) == 1
    for v in fp_right_kernel(M, 5):
        assert all(sum(a * b for a, b in zip(row, v)) % 5 == 0 for row in M)
    for x in fp_left_kernel(M, 5):
        assert fp_vecmat(x, M, 5) == [0, 0, 0]
    assert len(fp_left_kernel(M, 5)) == 1


def test_fp_space_reduce_and_equality():
    A = FpSpace(3, 3, [[1, 1, 0], [0, 1, 1]])
    B = FpSpace(3, 3, [[1, 2, 1], [0, 1, 1]])
    assert A == B
    assert A.contains([1, 2, 1])
    assert not A.contains([0, 0, 1])
    assert A.reduce([1, 1, 0]) == [0, 0, 0]


def test_root_count_in_unit_interval():
    f = RationalPolynomial([Fraction(1, 6), Fraction(-5, 6), 1])  # (t - 1/2)(t - 1/3)
    assert count_roots_open_unit_interval(f) == 2
    assert count_roots_open_unit_interval(f * f) == 2
    assert count_roots_open_unit_interval(RationalPolynomial([0, -1, 1])) == 0
    assert count_roots_open_unit_interval(RationalPolynomial([1, 0, 1])) == 0


def test_roots_mod():
    assert roots_mod([-1, 0, 1], 7) == [1, 6]
    assert roots_mod([1, 0, 1], 101) == [10, 91]
