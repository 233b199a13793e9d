import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hopflab import linalg as la
from hopflab.field import field_create

FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2)]


def naive_matmul(F, a, b):
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k in range(a.shape[1]):
        out = F.add(out, F.mul(a[:, k, None], b[None, k, :]))
    return out


def span_size(F, m):
    """Brute force: number of distinct vectors in the row span."""
    seen = set()
    for coeffs in itertools.product(range(F.q), repeat=m.shape[0]):
        v = np.zeros(m.shape[1], dtype=np.int64)
        for c, row in zip(coeffs, m):
            v = F.add(v, F.mul(row, c))
        seen.add(tuple(v))
    return len(seen)


def rand(F, rng, *shape):
    return rng.integers(0, F.q, size=shape).astype(np.int64)


@pytest.mark.parametrize("p,n", FIELDS)
def test_matmul_against_naive(p, n):
    F = field_create(p, n)
    rng = np.random.default_rng(1)
    for shape in [(3, 4, 5), (17, 1, 9), (70, 130, 40)]:
        a, b = rand(F, rng, shape[0], shape[1]), rand(F, rng, shape[1], shape[2])
        assert (la.matmul(F, a, b) == naive_matmul(F, a, b)).all()


@pytest.mark.parametrize("p,n", [(2, 1), (3, 1), (2, 2)])
def test_rank_against_span_count(p, n):
    F = field_create(p, n)
    rng = np.random.default_rng(2)
    for _ in range(12):
        rows = int(rng.integers(1, 5))
        m = rand(F, rng, rows, int(rng.integers(1, 6)))
        if rng.random() < 0.5 and rows > 1:
            m[-1] = F.add(m[0], m[1 % rows])
        assert F.q ** la.rank(F, m) == span_size(F, m)


@pytest.mark.parametrize("p,n", FIELDS)
def test_kernel_image_solve_inverse(p, n):
    F = field_create(p, n)
    rng = np.random.default_rng(3)
    for _ in range(5):
        m = la.matmul(F, rand(F, rng, 20, 6), rand(F, rng, 6, 25))
        K = la.kernel_basis(F, m)
        rk = la.rank(F, m)
        assert K.shape[1] == 25 - rk and not la.matmul(F, m, K).any()
        B, rows = la.image_basis(F, m)
        assert B.shape[1] == rk and (B[rows] == la.identity(rk)).all()
        x = rand(F, rng, 25)
        sol = la.solve(F, m, la.matvec(F, m, x))
        assert (la.matvec(F, m, sol) == la.matvec(F, m, x)).all()
    e = la.zeros(3, 1)
    e[0, 0] = 1
    assert la.solve(F, la.zeros(3, 3), e) is None
    a = rand(F, rng, 12, 12)
    while not la.is_invertible(F, a):
        a = rand(F, rng, 12, 12)
    assert (la.matmul(F, a, la.inverse(F, a)) == la.identity(12)).all()


def test_blocked_rref_large():
    F = field_create(3, 2)
    rng = np.random.default_rng(4)
    m = la.matmul(F, rand(F, rng, 300, 180), rand(F, rng, 180, 320))
    R, piv = la.rref(F, m)
    assert len(piv) == 180
    assert (R[np.arange(180), piv] == 1).all()
    assert not R[180:].any()
    assert la.rank(F, m.T) == 180


def test_kron_sum_is_zero_matches_explicit():
    F = field_create(5)
    rng = np.random.default_rng(5)
    A1, B1 = rand(F, rng, 3, 4), rand(F, rng, 2, 5)
    A2 = F.neg(A1)
    assert la.kron_sum_is_zero(F, [(A1, B1), (A2, B1)])
    B2 = rand(F, rng, 2, 5)
    explicit = F.add(la.kron(F, A1, B1), la.kron(F, A2, B2))
    assert la.kron_sum_is_zero(F, [(A1, B1), (A2, B2)]) == (not explicit.any())


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 7), st.integers(1, 7), st.integers(0, 2**32 - 1), st.sampled_from(FIELDS))
def test_rank_of_transpose(r, c, seed, pn):
    F = field_create(*pn)
    m = rand(F, np.random.default_rng(seed), r, c)
    assert la.rank(F, m) == la.rank(F, m.T) <= min(r, c)


def test_matrix_wrapper():
    F = field_create(2, 2)
    M = la.MatrixGF.from_coeff_rows([[[1, 0], [0, 1]], [[0, 1], [1, 1]]], F)
    assert M.rank() == 1
    assert (M @ M).rows == 2
