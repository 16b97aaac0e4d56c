import random

import pytest
from hypothesis import given, settings, strategies as st

from magsq.ratlin import Rat, RatMatrix, kernel_basis, rank, symmetric_signature

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=6)


def mat(rows):
    return RatMatrix.from_rows(rows)


def test_kernel_identity_empty():
    assert kernel_basis(RatMatrix.identity(2)) == []


def test_kernel_zero_matrix_spans_plane():
    K = kernel_basis(RatMatrix(2, 2, {}))
    assert len(K) == 2
    assert K[0] != K[1]


def test_kernel_rank_one():
    # hand elimination: [[1,1],[2,2]] has kernel spanned by (1,-1)
    K = kernel_basis(mat([[1, 1], [2, 2]]))
    assert len(K) == 1
    v = K[0]
    assert v[0] * 1 + v[1] * 1 == 0
    assert v[0] != 0 and v[0] * (-1) == v[1]


def test_rank_examples():
    assert rank(RatMatrix.identity(5)) == 5
    assert rank(RatMatrix(3, 3, {})) == 0
    # hand elimination
    assert rank(mat([[1, 2], [2, 4], [0, 1]])) == 2


def test_signature_diagonal():
    assert symmetric_signature(mat([[1, 0], [0, -1]])) == (1, 1, 0)
    assert symmetric_signature(mat([[0]])) == (0, 0, 1)


def test_signature_rejects_asymmetric():
    with pytest.raises(ValueError):
        symmetric_signature(mat([[0, 1], [0, 0]]))


def test_signature_hyperbolic_block():
    # all-zero diagonal forces the rank-2 block path
    assert symmetric_signature(mat([[0, 3], [3, 0]])) == (1, 1, 0)
    assert symmetric_signature(mat([[0, 1, 0], [1, 0, 0], [0, 0, 0]])) == (1, 1, 1)


def test_signature_so3_killing():
    # structure constants e_i e_j = eps_ijk e_k; ad matrices by hand,
    # K(e_i, e_j) = Tr(ad_i ad_j) = -2 delta_ij
    K = mat([[-2, 0, 0], [0, -2, 0], [0, 0, -2]])
    assert symmetric_signature(K) == (0, 3, 0)


def _random_unimodular(n, rng):
    # product of elementary integer shears: det = 1 exactly
    M = [[Rat(1) if i == j else Rat(0) for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        c = rng.choice([-2, -1, 1, 2])
        for k in range(n):
            M[i][k] += c * M[j][k]
    return M


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**30))
def test_signature_congruence_invariance(seed):
    rng = random.Random(seed)
    n = rng.randrange(1, 6)
    diag = [rng.choice([-2, -1, 0, 1, 3]) for _ in range(n)]
    B = RatMatrix(n, n, {(i, i): Rat(d) for i, d in enumerate(diag) if d})
    expected = (sum(d > 0 for d in diag), sum(d < 0 for d in diag),
                sum(d == 0 for d in diag))
    assert symmetric_signature(B) == expected
    S = _random_unimodular(n, rng)
    rows = [[sum(S[k][i] * (Rat(diag[k]) if k == l else Rat(0)) * S[l][j]
                 for k in range(n) for l in range(n))
             for j in range(n)] for i in range(n)]
    assert symmetric_signature(mat(rows)) == expected


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=1, max_size=5))
def test_kernel_vectors_annihilate_and_count(rows):
    M = mat(rows)
    K = kernel_basis(M)
    assert rank(M) + len(K) == M.cols
    for v in K:
        for r in rows:
            assert sum(Rat(a) * x for a, x in zip(r, v)) == 0


@given(rationals, rationals)
def test_rat_round_trips(a, b):
    a, b = Rat(a), Rat(b)
    assert (a + b) - b == a
    if b != 0:
        assert (a * b) / b == a
