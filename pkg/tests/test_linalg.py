import random
from fractions import Fraction

import pytest

from gradedlie.linalg import (
    RatMatrix,
    dot,
    inverse,
    kernel_basis,
    rank,
    rref,
    solve,
)


def det(rows):
    """Cofactor-expansion determinant, exact; oracle-only (tiny sizes)."""
    n = len(rows)
    if n == 1:
        return Fraction(rows[0][0])
    total = Fraction(0)
    for j in range(n):
        a = rows[0][j]
        if not a:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * Fraction(a) * det(minor)
    return total


def minor_rank(rows, ncols):
    """Largest k admitting a nonzero k x k minor."""
    from itertools import combinations

    nrows = len(rows)
    for k in range(min(nrows, ncols), 0, -1):
        for ri in combinations(range(nrows), k):
            for ci in combinations(range(ncols), k):
                sub = [[rows[i][j] for j in ci] for i in ri]
                if det(sub):
                    return k
    return 0


def test_rref_identity():
    r, pivots = rref(RatMatrix.identity(2))
    assert r == RatMatrix.identity(2)
    assert pivots == [0, 1]


def test_rref_rank_one():
    r, pivots = rref(RatMatrix.from_rows([[2, 4], [1, 2]]))
    assert r == RatMatrix.from_rows([[1, 2], [0, 0]])
    assert pivots == [0]


def test_rref_matches_minor_rank_oracle():
    rng = random.Random(20260818)
    for _ in range(12):
        # product of 5x3 and 3x7 has rank at most 3
        a = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(5)]
        b = [[rng.randint(-3, 3) for _ in range(7)] for _ in range(3)]
        prod = [[sum(a[i][k] * b[k][j] for k in range(3)) for j in range(7)]
                for i in range(5)]
        m = RatMatrix.from_rows(prod)
        assert rank(m) == minor_rank(prod, 7) <= 3


def test_kernel_identity_empty():
    assert kernel_basis(RatMatrix.identity(4)) == []


def test_kernel_zero_matrix_full():
    vecs = kernel_basis(RatMatrix.zeros(3, 3))
    assert len(vecs) == 3
    assert vecs[0] == (1, 0, 0) and vecs[1] == (0, 1, 0) and vecs[2] == (0, 0, 1)


def test_kernel_single_relation():
    vecs = kernel_basis(RatMatrix.from_rows([[1, 1]]))
    assert vecs == [(Fraction(-1), Fraction(1))]


def _random_matrix(rng, rows, cols):
    ent = {}
    for i in range(rows):
        for j in range(cols):
            if rng.random() < 0.5:
                ent[(i, j)] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return RatMatrix(rows, cols, ent)


def test_rank_nullity_and_kernel_exactness():
    rng = random.Random(7)
    for _ in range(60):
        m = _random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
        vecs = kernel_basis(m)
        assert rank(m) + len(vecs) == m.cols
        for v in vecs:
            assert all(x == 0 for x in m.mul_vec(v))


def test_rref_idempotent():
    rng = random.Random(8)
    for _ in range(40):
        m = _random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        r1, p1 = rref(m)
        r2, p2 = rref(r1)
        assert r1 == r2 and p1 == p2
        assert p1 == sorted(p1)


def test_solve_consistent_and_inconsistent():
    m = RatMatrix.from_rows([[1, 2], [2, 4]])
    x = solve(m, [3, 6])
    assert x is not None and m.mul_vec(x) == (3, 6)
    assert solve(m, [3, 7]) is None


def test_solve_random_consistent_systems():
    rng = random.Random(9)
    for _ in range(40):
        m = _random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        target = tuple(Fraction(rng.randint(-3, 3)) for _ in range(m.cols))
        b = m.mul_vec(target)
        x = solve(m, b)
        assert x is not None and m.mul_vec(x) == b


def test_inverse_round_trip_and_singular():
    m = RatMatrix.from_rows([[2, 1], [1, 1]])
    assert m @ inverse(m) == RatMatrix.identity(2)
    assert inverse(m) @ m == RatMatrix.identity(2)
    with pytest.raises(ValueError):
        inverse(RatMatrix.from_rows([[1, 2], [2, 4]]))


def test_matmul_vstack_hstack_transpose():
    a = RatMatrix.from_rows([[1, 2], [3, 4]])
    b = RatMatrix.from_rows([[0, 1], [1, 0]])
    assert (a @ b) == RatMatrix.from_rows([[2, 1], [4, 3]])
    assert RatMatrix.vstack([a, b]).rows == 4
    assert RatMatrix.hstack([a, b]).cols == 4
    assert a.transpose() == RatMatrix.from_rows([[1, 3], [2, 4]])
    assert dot([1, 2, 3], [4, 5, 6]) == 32


def test_no_stored_zeros():
    m = RatMatrix(2, 2, {(0, 0): Fraction(0), (0, 1): Fraction(5)})
    assert (0, 0) not in m.entries and m[0, 0] == 0 and m[0, 1] == 5
