import numpy as np
import pytest

from hopflab.algebra import AlgebraCtx, Hopf
from hopflab.field import field_create
from hopflab.modules import random_module, tensor, trivial_module
from hopflab.resolution import CohClass, l_zeta_data, random_class, trivial_resolution
from hopflab.witness import (is_module_iso, multi_factor_witness, swap_permutation,
                             tensor_s_witness, witness_matrix)


@pytest.mark.parametrize("p,n,r", [(2, 1, 2), (3, 1, 2), (2, 2, 2), (2, 1, 3)])
def test_witness_is_an_isomorphism(p, n, r):
    A = AlgebraCtx(field_create(p, n), r)
    res = trivial_resolution(A, 4)
    rng = np.random.default_rng(p + n + r)
    for _ in range(3):
        c = random_class(A.field, r, int(rng.choice([2, 4])), rng, in_S=True)
        L = l_zeta_data(A, c, res)
        M = random_module(A, int(rng.integers(1, 4)), rng)
        rep = tensor_s_witness(L, M)
        assert rep.ok
        if L.dim * M.dim <= 200:
            W = witness_matrix(rep.blocks, M)
            assert is_module_iso(A.field, tensor(Hopf.GR, L.module, M), tensor(Hopf.LIE, L.module, M), W)


def test_witness_with_trivial_module():
    A = AlgebraCtx(field_create(2), 2)
    L = l_zeta_data(A, CohClass.zeta(A.field, 2, 0))
    assert tensor_s_witness(L, trivial_module(A)).ok


def test_non_S_class_breaks_the_construction():
    A = AlgebraCtx(field_create(3), 2)
    F = A.field
    c = CohClass.zeta(F, 2, 0) + CohClass.eta(F, 2, 0) * CohClass.eta(F, 2, 1)
    L = l_zeta_data(A, c)
    M = random_module(A, 3, np.random.default_rng([6, 0]))
    assert not tensor_s_witness(L, M).preserves


def test_three_factors():
    A = AlgebraCtx(field_create(3), 2)
    F = A.field
    res = trivial_resolution(A, 2)
    Ls = [l_zeta_data(A, CohClass.zeta(F, 2, 0), res),
          l_zeta_data(A, CohClass.zeta(F, 2, 0) + CohClass.zeta(F, 2, 1), res)]
    N = l_zeta_data(A, CohClass.eta(F, 2, 1), res).module
    W, Mg, Ml = multi_factor_witness(Ls, N)
    assert is_module_iso(F, Mg, Ml, W)


def test_swap_permutation():
    A = AlgebraCtx(field_create(2), 2)
    rng = np.random.default_rng(1)
    U, V = random_module(A, 2, rng), random_module(A, 3, rng)
    P = swap_permutation(U.dim, V.dim)
    for h in Hopf:
        assert is_module_iso(A.field, tensor(h, U, V), tensor(h, V, U), P)
