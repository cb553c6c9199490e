from itertools import combinations
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from rackcoh.smith import IntMatrix, matmul_dense, smith_normal_form


def _det(M):
    M = [list(r) for r in M]
    n = len(M)
    # Bareiss, exact over the integers
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[-1][-1] if n else 1


def _determinantal_factors(M):
    """Invariant factors from gcds of k x k minors."""
    m, n = len(M), len(M[0])
    dets = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = gcd(g, _det([[M[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        dets.append(g)
    return [dets[i] // dets[i - 1] for i in range(1, len(dets))]


@pytest.mark.parametrize(
    "M, factors",
    [
        ([[2, 0], [0, 3]], [1, 6]),
        ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], [2, 6, 12]),
        ([[0, 0], [0, 0]], []),
        ([[1, 2, 3]], [1]),
        ([[4], [6]], [2]),
    ],
)
def test_examples(M, factors):
    assert smith_normal_form(M).factors == factors
    assert smith_normal_form(M, transforms=True).factors == factors


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_transforms(M):
    s = smith_normal_form(M, transforms=True)
    assert matmul_dense(matmul_dense(s.U, M), s.V) == s.diagonal()
    assert abs(_det(s.U)) == 1 and abs(_det(s.V)) == 1
    for a, b in zip(s.factors, s.factors[1:]):
        assert b % a == 0


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_against_determinantal_divisors(M):
    expected = _determinantal_factors(M)
    assert smith_normal_form(M).factors == expected
    assert smith_normal_form(M, transforms=True).factors == expected


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_sparse_path_with_duplicate_rows(M):
    doubled = M + [[-v for v in r] for r in M] + M
    assert smith_normal_form(doubled).factors == smith_normal_form(M).factors


def test_rank_and_torsion():
    s = smith_normal_form([[2, 0, 0], [0, 0, 0], [0, 0, 1]])
    assert s.rank == 2 and s.torsion == [2]


def test_intmatrix_ops():
    A = IntMatrix.from_dense([[1, 0, 2], [0, -1, 0]])
    B = IntMatrix.from_dense([[1, 1], [0, 1], [3, 0]])
    assert (A @ B).to_dense() == [[7, 1], [0, -1]]
    assert A.transpose().to_dense() == [[1, 0], [0, -1], [2, 0]]
    assert A.nnz() == 3 and not A.is_zero()
    A.add(0, 0, -1)
    assert A[0, 0] == 0 and A.nnz() == 2
    assert IntMatrix.load(A.dump()) == A
    assert IntMatrix.load(IntMatrix(0, 3).dump()) == IntMatrix(0, 3)
    with pytest.raises(ValueError):
        IntMatrix.load("2 2\n1 2\n")
