from math import comb

import numpy as np
import pytest

from hopflab import linalg as la
from hopflab.algebra import AlgebraCtx
from hopflab.field import field_create
from hopflab.modules import (direct_sum, free_module, is_stably_isomorphic, random_module,
                             trivial_module)
from hopflab.resolution import (ClassError, CohClass, check_resolution, l_zeta_data,
                                minimal_resolution, omega_k, random_class, rank_formula, syzygy,
                                trivial_resolution, yoneda_product)


def alg(p=2, r=2, n=1):
    return AlgebraCtx(field_create(p, n), r)


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("r", [1, 2, 3])
def test_trivial_resolution_exact_minimal(p, r):
    res = trivial_resolution(alg(p, r), 6)
    chk = check_resolution(res)
    assert chk == {"augmentation_onto": True, "exact": True, "minimal": True}
    assert list(res.ranks) == [comb(d + r - 1, r - 1) for d in range(7)]


def test_omega2_dimension_brute_force():
    A = alg(2, 2)
    F = A.field
    # cover A^2 -> rad A, e_i -> x_i; its kernel is the second syzygy of k
    cover = np.concatenate([A.left_mult(A.gen(0)), A.left_mult(A.gen(1))], axis=1)
    assert la.kernel_basis(F, cover).shape[1] == 5
    assert omega_k(A, 2).dim == 5


def test_minimal_resolution_of_sum_and_syzygy_agreement():
    A = alg(3, 2)
    M = direct_sum(trivial_module(A), free_module(A))
    res = minimal_resolution(M, 3)
    assert list(res.ranks) == [2, 2, 3, 4]
    assert all(check_resolution(res).values())
    assert is_stably_isomorphic(syzygy(M, 3), omega_k(A, 3)).outcome == "yes"


def test_minimal_resolution_random_module():
    A = alg(2, 2, 2)
    M = random_module(A, 4, np.random.default_rng(1))
    res = minimal_resolution(M, 4)
    assert all(check_resolution(res).values())


@pytest.mark.parametrize("p,r", [(2, 2), (3, 2), (5, 2), (3, 3), (2, 3)])
def test_yoneda_equals_cup(p, r):
    A = alg(p, r)
    F = A.field
    res = trivial_resolution(A, 4)
    rng = np.random.default_rng(p * 10 + r)
    for _ in range(6):
        d1, d2 = int(rng.integers(1, 3)), int(rng.integers(1, 3))
        c1, c2 = random_class(F, r, d1, rng), random_class(F, r, d2, rng)
        assert yoneda_product(c1, c2, res) == c1.cup(c2)


def test_ring_relations():
    F2, F3 = field_create(2), field_create(3)
    e1, e2 = CohClass.eta(F2, 2, 0), CohClass.eta(F2, 2, 1)
    assert e1 * e1 == CohClass.zeta(F2, 2, 0)  # polynomial ring at p = 2
    assert e1 * e2 == e2 * e1
    a, b = CohClass.eta(F3, 2, 0), CohClass.eta(F3, 2, 1)
    assert (a * a).is_zero()
    assert a * b == -(b * a)
    z = CohClass.zeta(F3, 2, 0)
    assert z * a == a * z
    assert (z * z).in_S() and not (a * b).in_S()


def test_class_arithmetic_and_format():
    F = field_create(3)
    c = CohClass.zeta(F, 2, 0) + CohClass.zeta(F, 2, 1, 2)
    assert str(c) == "z1 + 2*z2"
    assert (c - c).is_zero()
    with pytest.raises(ClassError):
        c + CohClass.eta(F, 2, 0)


@pytest.mark.parametrize("p,r,d", [(2, 2, 2), (3, 2, 2), (3, 2, 3), (2, 3, 4)])
def test_l_zeta_dimension(p, r, d):
    A = alg(p, r)
    res = trivial_resolution(A, d)
    c = random_class(A.field, r, d, np.random.default_rng(d))
    L = l_zeta_data(A, c, res)
    assert L.dim == omega_k(A, d, res).dim - 1
    with pytest.raises(ClassError):
        l_zeta_data(A, CohClass.zero(A.field, r, d), res)


def test_rank_formula():
    assert [rank_formula(3, d) for d in range(5)] == [1, 3, 6, 10, 15]
